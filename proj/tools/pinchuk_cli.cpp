#include "pinchuk/errors.hpp"
#include "pinchuk/io.hpp"
#include "pinchuk/verification.hpp"
#include "pinchuk/witness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace pinchuk;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitNoWitness = 2;
constexpr int kExitUsage = 3;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(json report, bool no_timestamp) {
    if (!no_timestamp) report["generated_at"] = utc_timestamp();
    std::cout << report.dump(2) << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

BigRat parse_rational_flag(const std::string& text, const std::string& flag) {
    try {
        return BigRat::from_string(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(flag, e.what());
    }
}

BigRat parse_decimal_flag(const std::string& text, const std::string& flag) {
    try {
        return BigRat::from_decimal_string(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(flag, e.what());
    }
}

int cmd_build(const std::string& c_text, const std::string& k_text, const std::string& out_path,
              bool no_timestamp) {
    ConstructionParams params;
    params.c = parse_rational_flag(c_text, "--c");
    unsigned k = 0;
    for (const std::string& coeff : split(k_text, ','))
        params.K.set_coeff(k++, parse_rational_flag(coeff, "--K"));

    const ConstructionResult result = construct_from_cK(params);
    const MapDocument doc = make_document(result);
    save_document(doc, out_path);

    json k_list = json::array();
    for (const BigRat& coeff : doc.K) k_list.push_back(coeff.to_string());
    emit(json{{"command", "build"},
              {"params", {{"c", doc.c.to_string()}, {"K", std::move(k_list)}}},
              {"deg_p", doc.deg_p},
              {"deg_q", doc.deg_q},
              {"out", out_path}},
         no_timestamp);
    std::cerr << "built map c=" << doc.c.to_short_string() << " deg p = " << doc.deg_p
              << ", deg q = " << doc.deg_q << " -> " << out_path << "\n";
    return kExitOk;
}

struct CheckOutcome {
    bool pass;
    std::string details;
};

CheckOutcome run_check(const std::function<std::string()>& body) {
    try {
        return {true, body()};
    } catch (const IdentityViolation& e) {
        return {false, e.what()};
    } catch (const NotDivisible& e) {
        return {false, e.what()};
    }
}

int cmd_verify(const std::string& in_path, std::vector<std::string> checks, bool no_timestamp) {
    const MapDocument doc = load_document(in_path);
    if (checks.empty())
        checks = {"identities", "commutation", "sos", "groebner", "factor", "degree"};

    const BaseSystem base = build_base();
    UniPoly K;
    for (std::size_t k = 0; k < doc.K.size(); ++k) K.set_coeff(unsigned(k), doc.K[k]);

    json check_reports = json::array();
    bool all_pass = true;
    for (const std::string& name : checks) {
        CheckOutcome outcome{false, "unknown check: " + name};
        if (name == "identities") {
            outcome = run_check([&] {
                check_base_identities(base);
                if (!(jacobian(doc.p, base.h) == -base.f))
                    throw IdentityViolation("J(p,h) != -f for the document's p");
                return "J(h,t)=h-t, J(f,h)=-f, J(p,h)=-f, all exact";
            });
        } else if (name == "commutation") {
            outcome = run_check([&] {
                const ConstructionResult result = construct_from_cK({doc.c, K});
                check_commutation(result.q_laurent, base);
                return "formal Jacobian of the q ansatz commutes with lowering";
            });
        } else if (name == "sos") {
            outcome = run_check([&] {
                const ConstructionResult result = construct_from_cK({doc.c, K});
                make_sos_certificate(base, doc.c, result.N0, result.N1, doc.p, doc.q);
                return "J(p,q) = S1^2 + S2^2 + S3^2 exactly";
            });
        } else if (name == "groebner") {
            outcome = run_check([&]() -> std::string {
                if (!groebner_triviality(base, doc.c))
                    throw IdentityViolation("<f, c(h^2+h)-t> is not the unit ideal for c = " +
                                            doc.c.to_short_string());
                return "groebner basis of <f, c(h^2+h)-t> is {1} for c = " +
                       doc.c.to_short_string();
            });
        } else if (name == "factor") {
            outcome = run_check([&] {
                check_p_factor(base, doc.p);
                return "xt+1 divides p; p vanishes on both branches of y=(x-1)/x^2";
            });
        } else if (name == "degree") {
            const int got_p = doc.p.total_degree().value_or(0);
            const int got_q = doc.q.total_degree().value_or(0);
            outcome.pass = got_p == doc.deg_p && got_q == doc.deg_q;
            outcome.details = "recomputed deg p = " + std::to_string(got_p) + " (expected " +
                              std::to_string(doc.deg_p) + "), deg q = " + std::to_string(got_q) +
                              " (expected " + std::to_string(doc.deg_q) + ")";
        }
        all_pass = all_pass && outcome.pass;
        check_reports.push_back(
            json{{"name", name}, {"pass", outcome.pass}, {"details", outcome.details}});
        std::cerr << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.details
                  << "\n";
    }

    emit(json{{"command", "verify"},
              {"in", in_path},
              {"checks", std::move(check_reports)},
              {"all_pass", all_pass}},
         no_timestamp);
    return all_pass ? kExitOk : kExitCheckFailed;
}

json witness_to_json(const WitnessPair& w) {
    return json{{"z1", {w.x1, w.y1}},
                {"z2", {w.x2, w.y2}},
                {"z1_rat", {w.x1_rat.to_string(), w.y1_rat.to_string()}},
                {"z2_rat", {w.x2_rat.to_string(), w.y2_rat.to_string()}},
                {"image_residual_float", w.image_residual_float},
                {"image_residual_exact", w.image_residual_exact.to_string()},
                {"separation", w.separation},
                {"newton_contraction_ok", w.newton_contraction_ok}};
}

int cmd_witness(const std::string& in_path, const SearchConfig& cfg, bool no_timestamp) {
    const MapDocument doc = load_document(in_path);
    cfg.validate();

    WitnessReport report;
    try {
        report = run_witness_search(doc.p, doc.q, cfg);
    } catch (const NoCandidates& e) {
        std::cerr << "no witness: " << e.what() << "\n";
        emit(json{{"command", "witness"},
                  {"in", in_path},
                  {"witnesses", json::array()},
                  {"error", e.what()}},
             no_timestamp);
        return kExitNoWitness;
    }

    json witnesses = json::array();
    for (const WitnessPair& w : report.witnesses) witnesses.push_back(witness_to_json(w));
    emit(json{{"command", "witness"},
              {"in", in_path},
              {"witnesses", std::move(witnesses)},
              {"stats",
               {{"candidates", report.candidates},
                {"refined", report.refined},
                {"collapsed", report.collapsed},
                {"no_convergence", report.no_convergence},
                {"uncertified", report.uncertified},
                {"demoted", report.demoted}}}},
         no_timestamp);

    if (report.witnesses.empty()) {
        std::cerr << "no witness certified: tighten --tol, raise --max-candidates, or widen "
                     "--box\n";
        return kExitNoWitness;
    }
    std::cerr << report.witnesses.size() << " certified witness(es); best exact residual "
              << report.witnesses.front().image_residual_exact.to_string() << "\n";
    return kExitOk;
}

int cmd_export(const std::string& in_path, const std::string& which, const std::string& out_path,
               bool no_timestamp) {
    const MapDocument doc = load_document(in_path);
    ExportSelection sel = ExportSelection::pq;
    if (which == "p") sel = ExportSelection::p;
    else if (which == "q") sel = ExportSelection::q;
    else if (which != "pq") throw CLI::ValidationError("--poly", "must be p, q, or pq");

    const std::string text = export_text(doc, sel);
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write failure on " + out_path);
    emit(json{{"command", "export"}, {"in", in_path}, {"poly", which}, {"out", out_path}},
         no_timestamp);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructor and verifier for a family of non-injective polynomial "
                 "local diffeomorphisms of the plane"};
    app.require_subcommand(1);
    bool no_timestamp = false;
    app.add_flag("--no-timestamp", no_timestamp, "omit the generated_at field from reports");

    auto* build = app.add_subcommand("build", "construct the map for parameters (c, K)")->fallthrough();
    std::string c_text, k_text, out_path;
    build->add_option("--c", c_text, "rational constant c, e.g. 1 or -2/3")->required();
    build->add_option("--K", k_text, "comma-separated rational coefficients of K(h), low to high")
        ->required();
    build->add_option("--out", out_path, "output document path")->required();

    auto* verify = app.add_subcommand("verify", "re-certify a map document")->fallthrough();
    std::string verify_in;
    std::vector<std::string> checks;
    verify->add_option("--in", verify_in, "map document path")->required();
    verify
        ->add_option("--checks", checks,
                     "subset of identities,commutation,sos,groebner,factor,degree")
        ->delimiter(',');

    auto* witness = app.add_subcommand("witness", "search for a non-injectivity witness pair")->fallthrough();
    std::string witness_in, box_text, min_sep_text, exact_tol_text;
    SearchConfig cfg;
    witness->add_option("--in", witness_in, "map document path")->required();
    witness->add_option("--box", box_text, "search box as x_min,x_max,y_min,y_max");
    witness->add_option("--grid", cfg.grid_n, "grid samples per axis");
    witness->add_option("--bucket-scale", cfg.bucket_scale,
                        "image cell width as a fraction of the per-axis range");
    witness->add_option("--tol", cfg.newton_tol, "newton convergence tolerance (float)");
    witness->add_option("--max-iter", cfg.newton_max_iter, "newton iteration budget");
    witness->add_option("--min-sep", min_sep_text,
                        "minimum witness separation (decimal, honored exactly)");
    witness->add_option("--exact-tol", exact_tol_text,
                        "exact residual certification bound (decimal, honored exactly)");
    witness->add_option("--max-candidates", cfg.max_candidates, "candidate list cap");
    witness->add_option("--max-witnesses", cfg.max_witnesses, "stop after this many witnesses");

    auto* exp = app.add_subcommand("export", "emit p and q as plain-text monomial lists")->fallthrough();
    std::string export_in, export_poly = "pq", export_out;
    exp->add_option("--in", export_in, "map document path")->required();
    exp->add_option("--poly", export_poly, "which polynomials: p, q, or pq");
    exp->add_option("--out", export_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);

        if (*witness) {
            if (!box_text.empty()) {
                const auto parts = split(box_text, ',');
                if (parts.size() != 4)
                    throw CLI::ValidationError("--box", "expected x_min,x_max,y_min,y_max");
                cfg.x_min = std::stod(parts[0]);
                cfg.x_max = std::stod(parts[1]);
                cfg.y_min = std::stod(parts[2]);
                cfg.y_max = std::stod(parts[3]);
            }
            if (!min_sep_text.empty()) {
                cfg.min_separation_exact = parse_decimal_flag(min_sep_text, "--min-sep");
                cfg.min_separation = cfg.min_separation_exact.to_double();
            }
            if (!exact_tol_text.empty())
                cfg.exact_tol = parse_decimal_flag(exact_tol_text, "--exact-tol");
        }

        if (*build) return cmd_build(c_text, k_text, out_path, no_timestamp);
        if (*verify) return cmd_verify(verify_in, checks, no_timestamp);
        if (*witness) return cmd_witness(witness_in, cfg, no_timestamp);
        if (*exp) return cmd_export(export_in, export_poly, export_out, no_timestamp);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
