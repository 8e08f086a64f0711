#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qcard/alice.hpp"
#include "qcard/bob_collective.hpp"
#include "qcard/bob_separate.hpp"
#include "qcard/tolerances.hpp"

namespace qcard::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json json_vec4(const std::array<double, 4>& v) {
    return ordered_json{v[0], v[1], v[2], v[3]};
}

std::string text_vec4(const std::array<double, 4>& v) {
    std::string out;
    for (size_t i = 0; i < 4; ++i) {
        if (i) out += ' ';
        out += fmt_short(v[i]);
    }
    return out;
}

std::string joined_vec4(const std::array<double, 4>& v) {
    std::string out;
    for (size_t i = 0; i < 4; ++i) {
        if (i) out += ';';
        out += fmt_full(v[i]);
    }
    return out;
}

}  // namespace

Format parse_format(const std::string& text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    if (text == "text") return Format::text;
    throw UsageError("unknown format '" + text + "' (expected json, csv or text)");
}

double parse_angle(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw UsageError("empty angle");

    double sign = 1.0;
    size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1.0 : 1.0;
        pos = 1;
    }
    if (s.compare(pos, 2, "pi") == 0) {
        std::string rest = s.substr(pos + 2);
        if (rest.empty()) return sign * kPi;
        if (rest[0] != '/') throw UsageError("bad angle literal '" + text + "'");
        std::string denom_text = rest.substr(1);
        char* end = nullptr;
        double denom = std::strtod(denom_text.c_str(), &end);
        if (denom_text.empty() || end != denom_text.c_str() + denom_text.size() || denom == 0.0)
            throw UsageError("bad angle literal '" + text + "'");
        return sign * kPi / denom;
    }
    char* end = nullptr;
    double value = std::strtod(s.c_str() + pos, &end);
    if (end != s.c_str() + s.size()) throw UsageError("bad angle '" + text + "'");
    return sign * value;
}

bob_collective::GuessChoice parse_choice(const std::string& text) {
    if (text == "I" || text == "1") return bob_collective::GuessChoice::fixed_card;
    if (text == "II" || text == "2") return bob_collective::GuessChoice::random_of_two;
    if (text == "III" || text == "3") return bob_collective::GuessChoice::random_of_three;
    throw UsageError("unknown guess choice '" + text + "' (expected I, II or III)");
}

std::string choice_name(bob_collective::GuessChoice choice) {
    switch (choice) {
        case bob_collective::GuessChoice::fixed_card: return "I";
        case bob_collective::GuessChoice::random_of_two: return "II";
        case bob_collective::GuessChoice::random_of_three: return "III";
    }
    return "?";
}

// ---- report ------------------------------------------------------------------

ReportDoc build_report() {
    ReportDoc doc;
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double ref_alice = (2.0 + s3) / 6.0;
    const double ref_combined = (3.0 + s2) / 6.0;

    auto opt1 = alice::optimize_alice(alice::Strategy::guess3_on_down);
    auto opt2 = alice::optimize_alice(alice::Strategy::guess2_on_down);
    doc.alice_alpha_star = opt1.alpha_star;
    doc.p_alice = opt1.p_star;
    doc.alice_alpha_star_mirror = opt2.alpha_star;
    doc.p_alice_mirror = opt2.p_star;
    doc.entropy_argmin_alpha = alice::entropy_argmin(alice::Strategy::guess3_on_down, 1e-5).alpha;

    auto sep = bob_separate::evaluate();
    doc.p1 = sep.p1;
    doc.p2 = sep.p2;
    doc.p12 = sep.p12;
    doc.p21 = sep.p21;
    doc.p_sep = sep.p_sep;
    doc.p_sep_enumeration = sep.enumeration_p_sep;
    doc.p_sep_discrepancy = sep.discrepancy;

    const auto coeffs = bob_collective::optimal_coefficients();
    doc.p_bob_combined =
        bob_collective::success_combined(coeffs, bob_collective::GuessChoice::random_of_three);
    doc.p_bob_combined_closed_form = bob_collective::success_combined_closed_form(coeffs);
    doc.collective_gram_residual = bob_collective::build_basis(coeffs).gram_residual;

    doc.dominance = doc.p_alice < doc.p_sep_enumeration &&
                    doc.p_sep_enumeration < doc.p_bob_combined;

    auto add = [&](const std::string& name, const std::string& method, double value,
                   double reference, double tolerance) {
        CheckEntry e{name, method, value, reference, tolerance,
                     std::abs(value - reference), false};
        e.pass = e.deviation <= tolerance;
        doc.checks.push_back(e);
    };

    add("alice_alpha_star", "closed-form", doc.alice_alpha_star, kPi / 12.0, tol::kAliceAlpha);
    add("p_alice", "closed-form", doc.p_alice, ref_alice, tol::kAliceValue);
    add("alice_alpha_star_mirror", "closed-form", doc.alice_alpha_star_mirror, -kPi / 12.0,
        tol::kAliceAlpha);
    add("p_alice_mirror", "closed-form", doc.p_alice_mirror, ref_alice, tol::kAliceValue);
    add("entropy_argmin_alpha", "closed-form", doc.entropy_argmin_alpha, kPi / 12.0,
        tol::kEntropyArgmin);
    add("p1", "closed-form", doc.p1, ref_alice, tol::kClosedForm);
    add("p2", "closed-form", doc.p2, (2.0 + s3) / 4.0, tol::kClosedForm);
    add("p12", "closed-form", doc.p12, (7.0 + 4.0 * s3) / 24.0, tol::kClosedForm);
    add("p21", "closed-form", doc.p21, (4.0 - s3) / 24.0, tol::kClosedForm);
    add("p_sep", "closed-form", doc.p_sep, (11.0 + 3.0 * s3) / 24.0, tol::kClosedForm);
    add("p_sep_enumeration", "enumeration", doc.p_sep_enumeration, (11.0 + 3.0 * s3) / 24.0,
        tol::kSeparateEnum);
    add("p_bob_combined", "enumeration", doc.p_bob_combined, ref_combined, tol::kCollectiveValue);
    add("p_bob_combined_closed_form", "closed-form", doc.p_bob_combined_closed_form, ref_combined,
        tol::kCollectiveValue);
    add("collective_gram_residual", "construction", doc.collective_gram_residual, 0.0,
        tol::kBasisGram);
    add("dominance", "ordering", doc.dominance ? 1.0 : 0.0, 1.0, 0.5);
    return doc;
}

bool all_pass(const ReportDoc& doc) {
    return std::all_of(doc.checks.begin(), doc.checks.end(),
                       [](const CheckEntry& e) { return e.pass; });
}

std::vector<std::string> failing_names(const ReportDoc& doc) {
    std::vector<std::string> out;
    for (const auto& e : doc.checks)
        if (!e.pass) out.push_back(e.name);
    return out;
}

int report_exit_code(const ReportDoc& doc) { return all_pass(doc) ? 0 : 2; }

std::string render_report(const ReportDoc& doc, Format format) {
    if (format == Format::json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "report";
        j["p_alice"] = doc.p_alice;
        j["alice_alpha_star"] = doc.alice_alpha_star;
        j["p_alice_mirror"] = doc.p_alice_mirror;
        j["alice_alpha_star_mirror"] = doc.alice_alpha_star_mirror;
        j["entropy_argmin_alpha"] = doc.entropy_argmin_alpha;
        j["p1"] = doc.p1;
        j["p2"] = doc.p2;
        j["p12"] = doc.p12;
        j["p21"] = doc.p21;
        j["p_sep"] = doc.p_sep;
        j["p_sep_enumeration"] = doc.p_sep_enumeration;
        j["p_sep_discrepancy"] = doc.p_sep_discrepancy;
        j["p_bob_combined"] = doc.p_bob_combined;
        j["p_bob_combined_closed_form"] = doc.p_bob_combined_closed_form;
        j["collective_gram_residual"] = doc.collective_gram_residual;
        j["dominance"] = doc.dominance;
        j["all_pass"] = all_pass(doc);
        j["failing"] = failing_names(doc);
        ordered_json checks = ordered_json::array();
        for (const auto& e : doc.checks) {
            ordered_json c;
            c["name"] = e.name;
            c["method"] = e.method;
            c["value"] = e.value;
            c["reference"] = e.reference;
            c["abs_deviation"] = e.deviation;
            c["tolerance"] = e.tolerance;
            c["pass"] = e.pass;
            checks.push_back(c);
        }
        j["checks"] = checks;
        return dump_json(j);
    }
    if (format == Format::csv) {
        std::string out = csv_row(
            {"name", "value", "method", "reference", "abs_deviation", "tolerance", "pass"});
        for (const auto& e : doc.checks)
            out += csv_row({e.name, fmt_full(e.value), e.method, fmt_full(e.reference),
                            fmt_full(e.deviation), fmt_full(e.tolerance),
                            e.pass ? "true" : "false"});
        return out;
    }
    std::string out = "qcard report\n";
    for (const auto& e : doc.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-28s %-14s value=%-16s dev=%-10.2e %s\n",
                      e.name.c_str(), e.method.c_str(), fmt_short(e.value).c_str(), e.deviation,
                      e.pass ? "ok" : "FAIL");
        out += line;
    }
    out += "dominance (p_alice < p_sep < p_combined): ";
    out += doc.dominance ? "true" : "false";
    out += "\n";
    auto failing = failing_names(doc);
    if (failing.empty()) {
        out += "all checks passed (" + std::to_string(doc.checks.size()) + ")\n";
    } else {
        out += "FAILING:";
        for (const auto& name : failing) out += " " + name;
        out += "\n";
    }
    return out;
}

// ---- sweep ---------------------------------------------------------------------

SweepDoc build_sweep(int strategy, double from, double to, int steps) {
    if (steps < 2) throw UsageError("sweep: steps must be >= 2");
    if (!(from < to)) throw UsageError("sweep: empty range (require from < to)");
    const double limit = kPi / 6.0 + 1e-12;
    if (from < -limit || to > limit)
        throw UsageError("sweep: range outside the measurement domain [-pi/6, pi/6]");

    SweepDoc doc;
    doc.strategy = strategy;
    alice::Strategy s = alice::strategy_from_index(strategy);
    for (int i = 0; i < steps; ++i) {
        double a = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
        alice::AliceAngle angle{a};
        doc.rows.push_back({a, alice::success_probability(angle, s),
                            alice::shannon_entropy(angle, s), alice::in_domain(s, angle)});
    }
    return doc;
}

std::string render_sweep(const SweepDoc& doc, Format format) {
    if (format == Format::json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "sweep";
        j["actor"] = "alice";
        j["strategy"] = doc.strategy;
        ordered_json rows = ordered_json::array();
        for (const auto& r : doc.rows) {
            ordered_json row;
            row["alpha"] = r.alpha;
            row["probability"] = r.probability;
            row["entropy"] = r.entropy;
            row["in_domain"] = r.in_domain;
            rows.push_back(row);
        }
        j["rows"] = rows;
        return dump_json(j);
    }
    if (format == Format::csv) {
        std::string out = csv_row({"alpha", "probability", "entropy", "in_domain"});
        for (const auto& r : doc.rows)
            out += csv_row({fmt_full(r.alpha), fmt_full(r.probability), fmt_full(r.entropy),
                            r.in_domain ? "true" : "false"});
        return out;
    }
    std::string out = "alpha           probability     entropy         in_domain\n";
    for (const auto& r : doc.rows) {
        char line[120];
        std::snprintf(line, sizeof line, "%-15s %-15s %-15s %s\n", fmt_short(r.alpha).c_str(),
                      fmt_short(r.probability).c_str(), fmt_short(r.entropy).c_str(),
                      r.in_domain ? "yes" : "no");
        out += line;
    }
    return out;
}

// ---- optimize -------------------------------------------------------------------

OptimizeDoc run_optimize_alice(int strategy) {
    OptimizeDoc doc;
    doc.actor = "alice";
    doc.strategy = strategy;
    auto opt = alice::optimize_alice(alice::strategy_from_index(strategy));
    doc.alpha_star = opt.alpha_star;
    doc.p_star = opt.p_star;
    return doc;
}

OptimizeDoc run_optimize_collective(bob_collective::GuessChoice choice, int restarts,
                                    std::uint64_t seed) {
    OptimizeDoc doc;
    doc.actor = "bob-collective";
    doc.choice = choice_name(choice);
    doc.restarts = restarts;
    doc.seed = seed;
    auto opt = bob_collective::optimize_collective(choice, restarts, seed);
    doc.p_star = opt.p_star;
    doc.failed_restarts = opt.failed_restarts;
    for (double v : opt.restart_values)
        if (v >= opt.p_star - 1e-9) ++doc.restarts_at_optimum;
    doc.coefficients = {opt.coeffs.a, opt.coeffs.b, opt.coeffs.c};
    return doc;
}

OptimizeDoc run_optimize_frame(int restarts, std::uint64_t seed) {
    OptimizeDoc doc;
    doc.actor = "bob-frame";
    doc.restarts = restarts;
    doc.seed = seed;
    auto opt = bob_collective::optimize_full_frame(restarts, seed);
    doc.p_star = opt.p_star;
    doc.failed_restarts = opt.failed_restarts;
    for (const auto& ket : opt.basis) {
        std::array<double, 4> row{};
        for (int i = 0; i < 4; ++i) row[static_cast<size_t>(i)] = std::real(ket[i]);
        doc.basis.push_back(row);
    }
    doc.guesses.assign(opt.guesses.begin(), opt.guesses.end());
    return doc;
}

std::string render_optimize(const OptimizeDoc& doc, Format format) {
    if (format == Format::json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "optimize";
        j["actor"] = doc.actor;
        if (doc.actor == "alice") {
            j["strategy"] = doc.strategy;
            j["alpha_star"] = doc.alpha_star;
        }
        if (!doc.choice.empty()) j["choice"] = doc.choice;
        if (doc.actor != "alice") {
            j["restarts"] = doc.restarts;
            j["seed"] = doc.seed;
            j["failed_restarts"] = doc.failed_restarts;
        }
        j["p_star"] = doc.p_star;
        if (!doc.coefficients.empty()) {
            j["restarts_at_optimum"] = doc.restarts_at_optimum;
            j["coefficients"] = {{"a", json_vec4(doc.coefficients[0])},
                                 {"b", json_vec4(doc.coefficients[1])},
                                 {"c", json_vec4(doc.coefficients[2])}};
        }
        if (!doc.basis.empty()) {
            ordered_json basis = ordered_json::array();
            for (const auto& row : doc.basis) basis.push_back(json_vec4(row));
            j["basis"] = basis;
            j["guesses"] = doc.guesses;
        }
        return dump_json(j);
    }
    if (format == Format::csv) {
        std::string out = csv_row({"key", "value"});
        out += csv_row({"actor", doc.actor});
        if (doc.actor == "alice") {
            out += csv_row({"strategy", std::to_string(doc.strategy)});
            out += csv_row({"alpha_star", fmt_full(doc.alpha_star)});
        } else {
            if (!doc.choice.empty()) out += csv_row({"choice", doc.choice});
            out += csv_row({"restarts", std::to_string(doc.restarts)});
            out += csv_row({"seed", std::to_string(doc.seed)});
            out += csv_row({"failed_restarts", std::to_string(doc.failed_restarts)});
        }
        out += csv_row({"p_star", fmt_full(doc.p_star)});
        if (!doc.coefficients.empty()) {
            out += csv_row({"restarts_at_optimum", std::to_string(doc.restarts_at_optimum)});
            out += csv_row({"coefficients_a", joined_vec4(doc.coefficients[0])});
            out += csv_row({"coefficients_b", joined_vec4(doc.coefficients[1])});
            out += csv_row({"coefficients_c", joined_vec4(doc.coefficients[2])});
        }
        for (size_t i = 0; i < doc.basis.size(); ++i)
            out += csv_row({"basis_" + std::to_string(i + 1), joined_vec4(doc.basis[i])});
        if (!doc.guesses.empty()) {
            std::string g;
            for (size_t i = 0; i < doc.guesses.size(); ++i)
                g += (i ? ";" : "") + std::to_string(doc.guesses[i]);
            out += csv_row({"guesses", g});
        }
        return out;
    }
    std::string out = "optimize " + doc.actor + "\n";
    if (doc.actor == "alice") {
        out += "  strategy   " + std::to_string(doc.strategy) + "\n";
        out += "  alpha_star " + fmt_short(doc.alpha_star) + "\n";
    } else {
        if (!doc.choice.empty()) out += "  choice     " + doc.choice + "\n";
        out += "  restarts   " + std::to_string(doc.restarts) +
               "  (failed: " + std::to_string(doc.failed_restarts) + ")\n";
        out += "  seed       " + std::to_string(doc.seed) + "\n";
    }
    out += "  p_star     " + fmt_short(doc.p_star) + "\n";
    if (!doc.coefficients.empty()) {
        out += "  at_optimum " + std::to_string(doc.restarts_at_optimum) + " restarts\n";
        out += "  a          " + text_vec4(doc.coefficients[0]) + "\n";
        out += "  b          " + text_vec4(doc.coefficients[1]) + "\n";
        out += "  c          " + text_vec4(doc.coefficients[2]) + "\n";
    }
    for (size_t i = 0; i < doc.basis.size(); ++i)
        out += "  phi" + std::to_string(i + 1) + "       " + text_vec4(doc.basis[i]) + "\n";
    if (!doc.guesses.empty()) {
        out += "  guesses   ";
        for (int g : doc.guesses) out += " " + std::to_string(g);
        out += "\n";
    }
    return out;
}

// ---- simulate ---------------------------------------------------------------------

SimulateDoc run_simulate(const std::string& actor, int strategy, double alpha,
                         bob_collective::GuessChoice choice, long long trials,
                         std::uint64_t seed, int shards) {
    engine::StrategySpec spec = engine::AliceSpec{};
    SimulateDoc doc;
    doc.actor = actor;
    doc.trials = trials;
    doc.seed = seed;
    doc.shards = shards;
    if (actor == "alice") {
        doc.strategy = strategy;
        doc.alpha = alpha;
        try {
            spec = engine::AliceSpec::from_strategy(alice::strategy_from_index(strategy), alpha);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (actor == "bob-separate") {
        doc.alpha = alpha;
        bob_separate::SequentialProtocol protocol = bob_separate::SequentialProtocol::standard();
        protocol.first_angle = alpha;
        spec = engine::BobSeparateSpec{protocol};
    } else if (actor == "bob-collective") {
        doc.choice = choice_name(choice);
        spec = engine::BobCollectiveSpec{bob_collective::optimal_coefficients(), choice};
    } else {
        throw UsageError("unknown actor '" + actor + "'");
    }
    try {
        doc.report = engine::simulate(spec, {trials, seed, shards});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return doc;
}

std::string render_simulate(const SimulateDoc& doc, Format format) {
    const auto& r = doc.report;
    if (format == Format::json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "simulate";
        j["actor"] = doc.actor;
        if (doc.actor == "alice") j["strategy"] = doc.strategy;
        if (doc.actor != "bob-collective") j["alpha"] = doc.alpha;
        if (!doc.choice.empty()) j["choice"] = doc.choice;
        j["trials"] = doc.trials;
        j["seed"] = doc.seed;
        j["shards"] = doc.shards;
        j["estimate"] = r.estimate;
        j["std_error"] = r.std_error;
        if (r.exact_reference) j["exact_reference"] = *r.exact_reference;
        if (r.z_score)
            j["z_score"] = *r.z_score;
        else
            j["z_score"] = nullptr;
        return dump_json(j);
    }
    if (format == Format::csv) {
        std::string out = csv_row({"key", "value"});
        out += csv_row({"actor", doc.actor});
        if (doc.actor == "alice") out += csv_row({"strategy", std::to_string(doc.strategy)});
        if (doc.actor != "bob-collective") out += csv_row({"alpha", fmt_full(doc.alpha)});
        if (!doc.choice.empty()) out += csv_row({"choice", doc.choice});
        out += csv_row({"trials", std::to_string(doc.trials)});
        out += csv_row({"seed", std::to_string(doc.seed)});
        out += csv_row({"shards", std::to_string(doc.shards)});
        out += csv_row({"estimate", fmt_full(r.estimate)});
        out += csv_row({"std_error", fmt_full(r.std_error)});
        if (r.exact_reference) out += csv_row({"exact_reference", fmt_full(*r.exact_reference)});
        out += csv_row({"z_score", r.z_score ? fmt_full(*r.z_score) : "nan"});
        return out;
    }
    std::string out = "simulate " + doc.actor + "\n";
    if (doc.actor == "alice") out += "  strategy        " + std::to_string(doc.strategy) + "\n";
    if (doc.actor != "bob-collective") out += "  alpha           " + fmt_short(doc.alpha) + "\n";
    if (!doc.choice.empty()) out += "  choice          " + doc.choice + "\n";
    out += "  trials          " + std::to_string(doc.trials) + "\n";
    out += "  seed            " + std::to_string(doc.seed) + "\n";
    out += "  shards          " + std::to_string(doc.shards) + "\n";
    out += "  estimate        " + fmt_short(r.estimate) + "\n";
    out += "  std_error       " + fmt_short(r.std_error) + "\n";
    if (r.exact_reference) out += "  exact_reference " + fmt_short(*r.exact_reference) + "\n";
    if (r.z_score) out += "  z_score         " + fmt_short(*r.z_score) + "\n";
    return out;
}

}  // namespace qcard::cli
