// heckeq: exact q-series calculator and identity verifier.
//
//   heckeq verify --suite <name> --order <O> [--json <path>] [--seed <u64>]
//   heckeq eval "<expr>" --order <O> [--terms <k>]
//   heckeq string --level N --m M --l L --method triple|hecke|lattice --order O

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "heckeq/suite.hpp"

namespace {

using namespace heckeq;

// orders are integers or rationals like "121/2"
FracExp parse_order(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return FracExp(std::stoll(text));
    return FracExp(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

// fault syntax: <identity-id>@<exponent>[@<delta>], exponent/delta rational
FaultSpec parse_fault(const std::string& text) {
    auto at1 = text.find('@');
    if (at1 == std::string::npos)
        throw CLI::ValidationError("--inject-fault expects <id>@<exponent>[@<delta>]");
    FaultSpec f;
    f.identity_id = text.substr(0, at1);
    auto rest = text.substr(at1 + 1);
    auto at2 = rest.find('@');
    f.exponent = parse_order(at2 == std::string::npos ? rest : rest.substr(0, at2));
    if (at2 != std::string::npos) {
        FracExp d = parse_order(rest.substr(at2 + 1));
        f.delta = rat(d.num, d.den);
    }
    return f;
}

void print_series(const FracSeries& s, long long terms) {
    std::cout << s.str(terms);
    if (s.order()) std::cout << "  (order " << s.order()->str() << ")";
    std::cout << "\n";
}

int run_verify(const std::string& suite, const std::optional<std::string>& order_text,
               const std::string& json_path, std::uint64_t seed,
               const std::string& fault_text) {
    SuiteOptions opt;
    opt.seed = seed;
    if (order_text) opt.order = parse_order(*order_text);
    if (!fault_text.empty()) opt.fault = parse_fault(fault_text);
    auto reports = run_suite(suite, opt);
    std::cout << emit_report(reports, ReportFormat::Text);
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open " << json_path << " for writing\n";
            return 2;
        }
        out << emit_report(reports, ReportFormat::Json);
    }
    int verified = 0, failed = 0, errors = 0;
    for (const auto& r : reports) {
        verified += r.status == IdentityReport::Status::Verified;
        failed += r.status == IdentityReport::Status::Failed;
        errors += r.status == IdentityReport::Status::Error;
    }
    std::cout << reports.size() << " identities: " << verified << " verified, " << failed
              << " failed, " << errors << " errors\n";
    return reports_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series arithmetic and identity verification"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run an identity suite");
    std::string suite;
    std::optional<std::string> order_text;
    std::string json_path, fault_text;
    std::uint64_t seed = SuiteOptions{}.seed;
    verify->add_option("--suite", suite, "suite name or 'all'")
        ->required()
        ->check(CLI::IsMember([] {
            auto v = suite_names();
            v.push_back("all");
            return v;
        }()));
    verify->add_option("--order", order_text, "truncation order (integer or rational)");
    verify->add_option("--json", json_path, "write the JSON report to this path");
    verify->add_option("--seed", seed, "seed for the randomized members");
    verify->add_option("--inject-fault", fault_text,
                       "perturb one identity: <id>@<exponent>[@<delta>]");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression as a truncated series");
    std::string expr_text, eval_order;
    long long terms = -1;
    eval_cmd->add_option("expr", expr_text, "expression to evaluate")->required();
    eval_cmd->add_option("--order", eval_order, "truncation order")->required();
    eval_cmd->add_option("--terms", terms, "print only the first k terms");

    auto* string_cmd = app.add_subcommand("string", "evaluate a string function");
    long long level = 0, m_idx = 0, l_idx = 0;
    std::string method = "triple", string_order;
    string_cmd->add_option("--level", level, "level N")->required();
    string_cmd->add_option("--m", m_idx, "index m")->required();
    string_cmd->add_option("--l", l_idx, "index l")->required();
    string_cmd->add_option("--method", method, "triple | hecke | lattice")
        ->check(CLI::IsMember({"triple", "hecke", "lattice"}));
    string_cmd->add_option("--order", string_order, "truncation order")->required();
    string_cmd->add_option("--terms", terms, "print only the first k terms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) return run_verify(suite, order_text, json_path, seed, fault_text);
        if (*eval_cmd) {
            FracSeries s = heckeq::eval_to_order(expr_text, parse_order(eval_order));
            print_series(s, terms);
            return 0;
        }
        if (*string_cmd) {
            StringIndex idx = reduced_index(StringIndex(level, m_idx, l_idx));
            FracExp O = parse_order(string_order);
            FracSeries s = method == "hecke"     ? string_s_hecke(idx, O)
                           : method == "lattice" ? string_kp_lattice(idx, O)
                                                 : string_c_direct(idx, O);
            print_series(s, terms);
            return 0;
        }
    } catch (const heckeq::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
