// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the heckeq CLI binary (used for the
// external-interface and exit-code checks).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "heckeq/suite.hpp"
#include "oracles.hpp"

using namespace heckeq;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion-" << criterion << ": " << what << "\n";
    std::cout.flush();
    if (!pass) ++g_failures;
}

struct SuiteSummary {
    int verified = 0, failed = 0, errors = 0;
    long long total_ms = 0;
    std::vector<IdentityReport> reports;
};

SuiteSummary run(const std::string& name, std::optional<FracExp> order = std::nullopt) {
    SuiteOptions opt;
    opt.order = order;
    SuiteSummary s;
    s.reports = run_suite(name, opt);
    for (const auto& r : s.reports) {
        s.verified += r.status == IdentityReport::Status::Verified;
        s.failed += r.status == IdentityReport::Status::Failed;
        s.errors += r.status == IdentityReport::Status::Error;
        s.total_ms += r.runtime_ms;
        if (r.status != IdentityReport::Status::Verified)
            std::cout << "       [" << r.identity_id << "] "
                      << (r.first_discrepancy
                              ? "discrepancy at q^" + r.first_discrepancy->exponent.str()
                              : r.error_message)
                      << "\n";
    }
    return s;
}

int run_cli(const std::string& bin, const std::string& args) {
    std::string cmd = bin + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    if (st == -1) return -1;
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    // 1. kp-hecke at order 60: all thirteen evaluations, under 60 s.
    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteSummary s = run("kp-hecke", FracExp(60));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = s.reports.size() == 13 && s.verified == 13 && secs < 60.0;
        std::ostringstream os;
        os << "kp-hecke @60: " << s.verified << "/13 verified in " << secs << " s";
        if (!cli.empty()) {
            int rc = run_cli(cli, "verify --suite kp-hecke --order 60");
            pass = pass && rc == 0;
            os << ", cli exit " << rc;
        }
        report(1, pass, os.str());
    }

    // 2. kp-eta at order 40: all twelve eta-form identities, under 120 s.
    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteSummary s = run("kp-eta", FracExp(40));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = s.reports.size() == 12 && s.verified == 12 && secs < 120.0;
        std::ostringstream os;
        os << "kp-eta @40: " << s.verified << "/12 verified in " << secs << " s";
        if (!cli.empty()) {
            int rc = run_cli(cli, "verify --suite kp-eta --order 40");
            pass = pass && rc == 0;
            os << ", cli exit " << rc;
        }
        report(2, pass, os.str());
    }

    // 3. Cross-method equality at order 20 for the six indices.
    {
        SuiteSummary s = run("cross", FracExp(20));
        report(3, s.reports.size() == 12 && s.verified == 12,
               "cross-method C = S = KP-lattice @20: " + std::to_string(s.verified) + "/12");
    }

    // 4. The three classic symmetries at order 25 for the six indices.
    {
        SuiteSummary s = run("string-sym", FracExp(25));
        report(4, s.reports.size() == 18 && s.verified == 18,
               "string symmetries @25: " + std::to_string(s.verified) + "/18");
    }

    // 5. Main theorem both signs, both corollaries, and the double-sum
    //    disguise at order 25.
    {
        SuiteSummary s = run("main-thm", FracExp(25));
        report(5,
               s.verified == static_cast<int>(s.reports.size()) && s.failed + s.errors == 0 &&
                   s.reports.size() == 44,
               "main theorem suite @25: " + std::to_string(s.verified) + "/" +
                   std::to_string(s.reports.size()));
    }

    // 6. Expansion theorems at default orders: 10 random specializations per
    //    p <= 3 and n in 2..6 at 25, the three double-sum evaluations at 50,
    //    and the two level-10 eta-quotient identities at 60.
    {
        SuiteSummary s = run("expansion");
        bool counts = s.reports.size() == 83;
        int lemma_members = 0;
        bool lemma_orders = true;
        for (const auto& r : s.reports) {
            if (r.identity_id.find("-eval") != std::string::npos) {
                ++lemma_members;
                lemma_orders = lemma_orders && r.order == FracExp(50);
            }
        }
        SuiteOptions opt;
        auto theta_reports = run_suite("theta-id", opt);
        int f661 = 0;
        bool f661_ok = true;
        for (const auto& r : theta_reports) {
            if (r.identity_id.find("f661-lemma") != std::string::npos) {
                ++f661;
                f661_ok = f661_ok && r.status == IdentityReport::Status::Verified &&
                          r.order == FracExp(60);
            }
        }
        bool pass = counts && s.verified == 83 && lemma_members == 3 && lemma_orders &&
                    f661 == 2 && f661_ok;
        report(6, pass,
               "expansions: " + std::to_string(s.verified) + "/83 (evaluations @50: " +
                   std::to_string(lemma_members) + ", product identities @60: " +
                   std::to_string(f661) + ")");
    }

    // 7. Randomized functional-equation suites with at least 25 instances per
    //    equation at orders 30-40, fixed seed.
    {
        bool pass = true;
        std::ostringstream os;
        for (const std::string name : {"theta-id", "appell", "hecke-fe"}) {
            SuiteSummary s = run(name);
            std::map<std::string, int> family;
            bool orders_ok = true;
            for (const auto& r : s.reports) {
                std::string id = r.identity_id;
                auto bracket = id.find('[');
                if (bracket == std::string::npos) continue;  // fixed members
                family[id.substr(0, bracket)]++;
                orders_ok = orders_ok && FracExp(30) <= r.order && r.order <= FracExp(60);
            }
            bool counts_ok = true;
            for (const auto& [fam, n] : family) counts_ok = counts_ok && n >= 25;
            pass = pass && s.failed + s.errors == 0 && counts_ok && orders_ok && !family.empty();
            os << name << ": " << s.verified << " ok across " << family.size() << " families; ";
        }
        report(7, pass, os.str());
    }

    // 8. Independent oracles: partition numbers in C^1_{0,0} and the
    //    pentagonal expansion of J_1.
    {
        const long long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
        FracSeries c = string_c_direct(StringIndex(1, 0, 0), FracExp(10));
        bool pass = true;
        for (long long n = 0; n <= 8; ++n) {
            pass = pass && oracle::partition_count(n) == expected[n];
            pass = pass && c.coeff(FracExp(-1, 24) + FracExp(n)) == rat(expected[n]);
        }
        auto coeffs = oracle::euler_product_coeffs(15, 15);
        FracSeries j1 = big_j(BigJKind::Prod, 0, 1, FracExp(15));
        for (int d = 0; d <= 15; ++d) pass = pass && j1.coeff(FracExp(d)) == rat(coeffs[d]);
        report(8, pass, "partition multiplicities p(0..8) and pentagonal J1 prefix");
    }

    // 9. Fault injection: a single perturbed coefficient in any suite turns
    //    exactly one report into a failure with the right discrepancy, and
    //    the CLI exits 1.
    {
        bool pass = true;
        struct Probe {
            const char* suite;
            const char* id;
            FracExp order, exponent;
        };
        const Probe probes[] = {
            {"notation", "notation/J12-product", FracExp(20), FracExp(9)},
            {"kp-hecke", "kp-hecke/level10B", FracExp(25), FracExp(13)},
            {"kp-eta", "kp-eta/level8B", FracExp(15), FracExp(1, 10)},
            {"cross", "cross/direct-vs-lattice[6,5,1]", FracExp(12), FracExp(-1, 24)},
            {"string-sym", "string-sym/negate-m[4,2,0]", FracExp(12), FracExp(5, 3)},
            {"main-thm", "main-thm/corollary-mK[K=2,l=0]", FracExp(12), FracExp(4)},
            {"expansion", "expansion/f551-eval", FracExp(15), FracExp(7)},
            {"appell", "appell/eval-half", FracExp(12), FracExp(7)},
            {"hecke-fe", "hecke-fe/symmetry[0]", FracExp(12), FracExp(3)},
            {"theta-id", "theta-id/f661-lemma-B", FracExp(12), FracExp(9)},
        };
        for (const Probe& p : probes) {
            SuiteOptions opt;
            opt.order = p.order;
            opt.fault = FaultSpec{p.id, p.exponent, rat(1)};
            auto reports = run_suite(p.suite, opt);
            int failed = 0;
            bool detail = false;
            for (const auto& r : reports) {
                if (r.status == IdentityReport::Status::Failed) {
                    ++failed;
                    detail = r.identity_id == p.id && r.first_discrepancy &&
                             r.first_discrepancy->exponent == p.exponent &&
                             r.first_discrepancy->lhs_coeff - r.first_discrepancy->rhs_coeff ==
                                 rat(1);
                }
            }
            if (failed != 1 || !detail) {
                pass = false;
                std::cout << "       fault probe failed for " << p.id << "\n";
            }
        }
        if (!cli.empty()) {
            int rc = run_cli(cli,
                             "verify --suite kp-hecke --order 20 "
                             "--inject-fault kp-hecke/level1@11");
            pass = pass && rc == 1;
            int rc0 = run_cli(cli, "verify --suite notation --order 20");
            pass = pass && rc0 == 0;
        }
        report(9, pass, "single-coefficient faults fail with correct discrepancy and exit 1");
    }

    std::cout << (g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << (9 - g_failures) << "/9)\n";
    return g_failures == 0 ? 0 : 1;
}
