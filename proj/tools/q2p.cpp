// Command-line driver: classification, construction, range surveys, and the
// reference-table regression for the fields Q(√2p).

#include "q2p/q2p.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using q2p::Int;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitSearchExhausted = 3;
constexpr int kExitIo = 4;

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw std::domain_error("not an integer: '" + s + "'");
    }
}

// Rejects inputs outside the p ≡ 1 (mod 8) pipeline with a descriptive
// message; p ≡ 5 (mod 8) gets its informational note.
void require_pipeline_prime(const Int& p) {
    if (!q2p::is_prime(p)) throw std::domain_error(p.str() + " is not prime");
    if (q2p::mod8(p) == 1) return;
    std::string msg = "p must be ≡ 1 (mod 8); got " + p.str() + " ≡ " +
                      std::to_string(q2p::mod8(p)) + " (mod 8)";
    if (q2p::mod8(p) == 5)
        msg += "\nnote: for p ≡ 5 (mod 8), Q(√2p) has h ≡ 2 (mod 4) and its "
               "Hilbert class field is the genus field Q(√2, √p)";
    throw std::domain_error(msg);
}

// Writes to the --output file if given, else to stdout. Exits with the I/O
// code on failure.
void emit(const std::optional<std::string>& path, const std::string& payload) {
    if (!path) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(*path);
    if (!out) throw std::ios_base::failure("cannot open output file: " + *path);
    out << payload;
    if (!out.flush()) throw std::ios_base::failure("write failed: " + *path);
}

int cmd_classify(const std::string& p_str) {
    Int p = parse_int(p_str);
    require_pipeline_prime(p);
    q2p::Classification cls = q2p::class_data(p);
    q2p::Representation rep = q2p::represent(p);
    q2p::CaseLabel label = q2p::classify_by_e(rep);
    std::cout << "p = " << p << "  (p ≡ " << q2p::mod_pos(p, 16) << " mod 16)\n"
              << "representation: p = e² - 2f² with (e, f) = (" << rep.e << ", " << rep.f
              << ")\n"
              << "alpha = " << q2p::to_string(q2p::alpha_of(rep)) << "\n"
              << "case: " << q2p::to_string(label) << "\n"
              << "h = " << cls.h << ", h⁺ = " << cls.h_plus << ", h₂ = " << cls.h2
              << ", h₂⁺ = " << cls.h2_plus << "\n"
              << "fundamental unit of Z[√" << 2 * p << "]: " << cls.eps_x << " + "
              << (cls.eps_y == 1 ? "" : cls.eps_y.str()) << "√" << 2 * p << "  (norm "
              << (cls.norm_eps > 0 ? "+1" : "-1") << ")\n"
              << "(2/p)₄ = " << (q2p::quartic_symbol_2_mod_p(p) > 0 ? "+1" : "-1")
              << ", (p/2)₄ = " << (q2p::quartic_symbol_p_mod_2(p) > 0 ? "+1" : "-1") << "\n";
    return kExitOk;
}

int cmd_construct(const std::string& p_str, const Int& u_limit,
                  const std::optional<std::string>& output) {
    Int p = parse_int(p_str);
    require_pipeline_prime(p);
    q2p::FieldReport rpt = q2p::construct_report(p, u_limit);
    emit(output, q2p::report_json(rpt).dump(2));
    return kExitOk;
}

int cmd_survey(const std::string& pmin_str, const std::string& pmax_str,
               const std::string& format, const Int& u_limit, unsigned jobs,
               const std::optional<std::string>& output) {
    Int pmin = parse_int(pmin_str), pmax = parse_int(pmax_str);
    if (!(pmin < pmax)) throw std::domain_error("survey: need pmin < pmax");
    auto rows = q2p::run_survey(pmin, pmax, u_limit, jobs);
    if (format == "csv")
        emit(output, q2p::survey_csv(rows));
    else if (format == "json")
        emit(output, q2p::survey_json(rows).dump(2) + "\n");
    else
        throw std::domain_error("survey: --format must be csv or json");
    return kExitOk;
}

int cmd_verify_paper() {
    auto results = q2p::run_paper_fixtures();
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
        if (!r.pass) ++failures;
    }
    std::cout << results.size() - failures << "/" << results.size() << " fixtures passed\n";
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_oracle(const std::string& p_str) {
    Int p = parse_int(p_str);
    require_pipeline_prime(p);
    q2p::Classification cls = q2p::class_data(p);
    Int D = 8 * p;
    std::cout << "p = " << p << ", D = 8p = " << D << "\n"
              << "h⁺ = " << cls.h_plus << ", h = " << cls.h << ", h₂ = " << cls.h2
              << ", h₂⁺ = " << cls.h2_plus << "\n"
              << "fundamental unit of Z[√" << 2 * p << "]: (x, y) = (" << cls.eps_x << ", "
              << cls.eps_y << "), norm " << (cls.norm_eps > 0 ? "+1" : "-1") << "\n";
    auto cycles = q2p::form_cycles(D);
    std::cout << "reduced form cycles of discriminant " << D << " (" << cycles.size()
              << "):\n";
    for (size_t i = 0; i < cycles.size(); ++i) {
        std::cout << "  cycle " << i + 1 << " (length " << cycles[i].size() << "):";
        for (const auto& f : cycles[i])
            std::cout << " (" << f.a << "," << f.b << "," << f.c << ")";
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction of unramified cyclic quartic and octic extensions of Q(√2p)"};
    app.require_subcommand(1);

    std::string p_str, pmin_str, pmax_str;
    std::string format = "csv";
    std::string u_limit_str = q2p::kDefaultULimit.str();
    unsigned jobs = 1;
    std::optional<std::string> output;

    auto* classify = app.add_subcommand("classify", "class data and case label for one prime");
    classify->add_option("p", p_str, "prime ≡ 1 (mod 8)")->required();

    auto* construct =
        app.add_subcommand("construct", "full construction pipeline for one prime (JSON report)");
    construct->add_option("p", p_str, "prime ≡ 1 (mod 8)")->required();
    construct->add_option("--u-limit", u_limit_str, "search ceiling for odd u (default 10000)");
    construct->add_option("--output", output, "write the report to a file");

    auto* survey = app.add_subcommand("survey", "one row per prime ≡ 1 (mod 8) in [pmin, pmax]");
    survey->add_option("pmin", pmin_str)->required();
    survey->add_option("pmax", pmax_str)->required();
    survey->add_option("--format", format, "csv or json (default csv)");
    survey->add_option("--u-limit", u_limit_str, "search ceiling for odd u");
    survey->add_option("--jobs", jobs, "worker threads (default 1)");
    survey->add_option("--output", output, "write to a file instead of stdout");

    auto* verify = app.add_subcommand("verify-paper", "run the reference-table regression");
    auto* oracle = app.add_subcommand("oracle", "class-group oracle dump with form cycles");
    oracle->add_option("p", p_str, "prime ≡ 1 (mod 8)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (classify->parsed()) return cmd_classify(p_str);
        if (construct->parsed())
            return cmd_construct(p_str, parse_int(u_limit_str), output);
        if (survey->parsed())
            return cmd_survey(pmin_str, pmax_str, format, parse_int(u_limit_str), jobs, output);
        if (verify->parsed()) return cmd_verify_paper();
        if (oracle->parsed()) return cmd_oracle(p_str);
    } catch (const q2p::search_exhausted_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitSearchExhausted;
    } catch (const std::ios_base::failure& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitInvalidInput;
}
