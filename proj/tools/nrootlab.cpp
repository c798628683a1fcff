#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <string>

#include "nroot/checks.hpp"
#include "nroot/exceptional.hpp"
#include "nroot/json_io.hpp"

namespace {

using namespace nroot;

const std::set<std::string> kTypes = {"D4", "D6", "D8", "D10", "E7", "E8"};

struct GlobalOpts {
    std::string type = "D6";
    std::string format = "text";
    std::string out;
    int workers = default_workers();
    bool full = false;
    unsigned long long seed = 20250809;
};

void emit(const GlobalOpts& g, const std::string& bytes) {
    if (g.out.empty()) {
        std::cout << bytes;
        if (!bytes.empty() && bytes.back() != '\n') std::cout << '\n';
    } else {
        write_file(g.out, bytes);
    }
}

Ctx& ctx_for(const GlobalOpts& g) {
    return context(SystemType::parse(g.type), g.workers);
}

int run_verify(const GlobalOpts& g, int confluence_trials) {
    VerifyOptions opt;
    opt.full = g.full;
    opt.workers = g.workers;
    opt.seed = g.seed;
    opt.confluence_trials = confluence_trials;
    auto results = run_checks(SystemType::parse(g.type), opt);
    int fails = 0;
    for (const auto& r : results) fails += !r.pass;
    if (g.format == "json" || !g.out.empty()) emit(g, report_json(results).dump(2));
    if (g.format != "json") {
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34)
                      << r.name << " " << std::setw(9)
                      << (std::to_string((long long)r.elapsed_ms) + "ms");
            if (!r.pass) std::cout << " expected: " << r.expected << "  actual: " << r.actual;
            std::cout << '\n';
        }
        std::cout << results.size() << " checks for " << g.type << ", " << fails
                  << " failure" << (fails == 1 ? "" : "s") << '\n';
    }
    return fails ? 1 : 0;
}

std::string render_export(const GlobalOpts& g, const std::string& kind) {
    Ctx& c = ctx_for(g);
    if (kind == "rootsystem") return root_system_json(c.rs).dump(2);
    if (kind == "nroots") return nroots_json(c.X).dump(2);
    if (kind == "hasse") return hasse_edges_text(c.qp);
    if (kind == "bases") {
        Json j;
        j["noncrossing"] = bases_json(c.mac, "noncrossing");
        j["nonnesting"] = bases_json(c.mac, "nonnesting");
        return j.dump(2);
    }
    if (kind == "cob") return cob_json(c.mac).dump(2);
    if (kind == "gamma") {
        if (g.type != "E8") throw CLI::ValidationError("gamma requires --type E8");
        ExceptionalE8 exc(c.qp, g.workers);
        Graph gr = exc.build_gamma();
        return g.format == "dot" ? graph_dot_text(gr) : graph_edges_text(gr);
    }
    throw CLI::ValidationError("unknown export kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for n-roots of simply laced root systems"};
    app.require_subcommand(1);
    GlobalOpts g;

    auto add_common = [&](CLI::App* cmd, bool with_type = true) {
        if (with_type)
            cmd->add_option("--type", g.type, "root system type")
                ->check(CLI::IsMember(kTypes));
        cmd->add_option("--format", g.format, "output format")
            ->check(CLI::IsMember({"json", "text", "dot", "edges"}));
        cmd->add_option("--out", g.out, "write output to a file");
        cmd->add_option("--workers", g.workers, "worker threads for sweeps");
    };

    // roots
    auto* roots = app.add_subcommand("roots", "root system construction");
    auto* roots_build = roots->add_subcommand("build", "build and export a root system");
    add_common(roots_build);

    // nroots
    auto* nroots_cmd = app.add_subcommand("nroots", "positive n-roots");
    auto* nroots_list = nroots_cmd->add_subcommand("list", "enumerate the positive n-roots");
    add_common(nroots_list);

    // qpar
    auto* qpar = app.add_subcommand("qpar", "quasiparabolic structure");
    auto* qpar_verify = qpar->add_subcommand("verify", "check the quasiparabolic axioms");
    std::string axioms = "qp1,qp2,levels";
    qpar_verify->add_option("--axioms", axioms, "comma list of qp1,qp2,levels");
    add_common(qpar_verify);
    auto* qpar_hasse = qpar->add_subcommand("hasse", "export the covering relations");
    add_common(qpar_hasse);

    // macd
    auto* macd = app.add_subcommand("macd", "Macdonald representation bases");
    auto* macd_basis = macd->add_subcommand("basis", "list a basis");
    std::string kind = "noncrossing";
    macd_basis->add_option("--kind", kind, "noncrossing or nonnesting")
        ->check(CLI::IsMember({"noncrossing", "nonnesting"}));
    add_common(macd_basis);
    auto* macd_cob = macd->add_subcommand("cob", "change of basis matrix");
    add_common(macd_cob);

    // special
    auto* special = app.add_subcommand("special", "sums, w_N, sieving");
    auto* sp_classes = special->add_subcommand("sigma-classes", "sigma equivalence classes");
    add_common(sp_classes);
    auto* sp_wn = special->add_subcommand("wn", "the nonnesting element w_N");
    add_common(sp_wn);
    auto* sp_csp = special->add_subcommand("csp", "cyclic sieving and Coxeter orbits");
    add_common(sp_csp);

    // exc
    auto* exc = app.add_subcommand("exc", "exceptional-type structures");
    auto* exc_gamma = exc->add_subcommand("gamma", "the graph on even alignment-free 8-roots");
    bool certify = false;
    exc_gamma->add_flag("--certify-srg", certify, "certify strong regularity");
    add_common(exc_gamma);
    auto* exc_fano = exc->add_subcommand("fano", "Fano plane labellings (E7)");
    std::string element = "thetaC";
    exc_fano->add_option("--element", element, "thetaC, thetaN, or an n-root id");
    add_common(exc_fano);

    // verify + export
    auto* verify = app.add_subcommand("verify", "run the full check suite");
    verify->add_flag("--full", g.full, "include the long-running E8 checks");
    verify->add_option("--seed", g.seed, "seed for randomized confluence tests");
    int trials = 100;
    verify->add_option("--trials", trials, "confluence trials");
    add_common(verify);

    auto* exp = app.add_subcommand("export", "serialize a structure to a file");
    std::string exp_kind = "rootsystem";
    exp->add_option("--kind", exp_kind, "rootsystem|nroots|hasse|gamma|bases|cob|report")
        ->check(CLI::IsMember(
            {"rootsystem", "nroots", "hasse", "gamma", "bases", "cob", "report"}));
    exp->add_flag("--full", g.full, "include the long-running E8 checks in reports");
    add_common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (roots_build->parsed()) {
            Ctx& c = ctx_for(g);
            if (g.format == "text") {
                std::ostringstream os;
                for (int i = 0; i < c.rs.num_positive(); ++i) {
                    os << i << "  ht " << c.rs.height(i) << "  [";
                    for (int v : c.rs.root(i)) os << ' ' << v;
                    os << " ]  (";
                    for (int v : c.rs.embedding(i)) os << ' ' << v;
                    os << " )\n";
                }
                emit(g, os.str());
            } else {
                emit(g, root_system_json(c.rs).dump(2));
            }
            return 0;
        }
        if (nroots_list->parsed()) {
            Ctx& c = ctx_for(g);
            if (g.format == "text") {
                std::ostringstream os;
                for (int x = 0; x < c.X.size(); ++x) {
                    os << x << " :";
                    for (uint16_t comp : c.X.components(x)) os << ' ' << comp;
                    auto cnt = c.X.counts(x);
                    os << "   A" << cnt.A << " C" << cnt.C << " N" << cnt.N << " level "
                       << cnt.level() << '\n';
                }
                emit(g, os.str());
            } else {
                emit(g, nroots_json(c.X).dump(2));
            }
            return 0;
        }
        if (qpar_verify->parsed()) {
            Ctx& c = ctx_for(g);
            std::vector<SweepReport> reports;
            std::stringstream ss(axioms);
            std::string ax;
            while (std::getline(ss, ax, ',')) {
                if (ax == "qp1") reports.push_back(c.qp.verify_qp1());
                else if (ax == "qp2") reports.push_back(c.qp.verify_qp2());
                else if (ax == "levels") reports.push_back(c.qp.verify_scaled());
                else throw CLI::ValidationError("unknown axiom: " + ax);
            }
            long long violations = 0;
            for (const auto& r : reports) {
                violations += r.violations;
                std::cout << r.name << ": " << r.checked << " checked, " << r.violations
                          << " violations";
                if (!r.pass()) std::cout << " (first: " << r.first_witness << ")";
                std::cout << '\n';
            }
            return violations ? 1 : 0;
        }
        if (qpar_hasse->parsed()) {
            emit(g, hasse_edges_text(ctx_for(g).qp));
            return 0;
        }
        if (macd_basis->parsed()) {
            emit(g, bases_json(ctx_for(g).mac, kind).dump(2));
            return 0;
        }
        if (macd_cob->parsed()) {
            emit(g, cob_json(ctx_for(g).mac).dump(2));
            return 0;
        }
        if (sp_classes->parsed()) {
            Ctx& c = ctx_for(g);
            Json arr = Json::array();
            for (const auto& cl : c.sp.sigma_classes()) {
                Json j;
                j["sigma"] = cl.sigma;
                j["members"] = cl.members;
                j["nonnesting"] = cl.nonnesting;
                j["noncrossing"] = cl.noncrossing;
                arr.push_back(j);
            }
            emit(g, arr.dump(2));
            return 0;
        }
        if (sp_wn->parsed()) {
            Ctx& c = ctx_for(g);
            auto word = c.sp.nonnesting_word();
            std::string line;
            for (int i : word) line += (line.empty() ? "s" : " s") + std::to_string(i);
            emit(g, line + "\n");
            return 0;
        }
        if (sp_csp->parsed()) {
            Ctx& c = ctx_for(g);
            std::vector<int> cox(c.rs.rank());
            std::iota(cox.begin(), cox.end(), 1);
            SweepReport rep = c.sp.cyclic_sieving(cox);
            std::cout << "cyclic sieving: " << rep.checked << " checked, " << rep.violations
                      << " violations\n";
            if (c.rs.type().family == Family::D) {
                auto orbit = c.sp.coxeter_orbit(cox, c.qp.theta_N());
                std::cout << "theta_N orbit: size " << orbit.orbit.size() << ", coverage "
                          << (orbit.full_coverage ? "exact" : "incomplete") << '\n';
                return rep.pass() && orbit.full_coverage ? 0 : 1;
            }
            auto seed = c.sp.find_covering_seed(cox);
            if (seed)
                std::cout << "covering orbit found from n-root " << *seed << '\n';
            else
                std::cout << "no covering orbit for this Coxeter word\n";
            return rep.pass() && seed ? 0 : 1;
        }
        if (exc_gamma->parsed()) {
            if (g.type != "E8") throw CLI::ValidationError("gamma requires --type E8");
            Ctx& c = ctx_for(g);
            ExceptionalE8 e8(c.qp, g.workers);
            Graph gr = e8.build_gamma();
            if (certify) {
                auto r = srg_certify(gr);
                std::cout << "srg(" << r.v << ", " << r.k << ", " << r.lambda << ", " << r.mu
                          << ") " << (r.ok ? "certified" : "FAILED: " + r.witness) << '\n';
                if (!r.ok) return 1;
            }
            emit(g, g.format == "dot" ? graph_dot_text(gr) : graph_edges_text(gr));
            return 0;
        }
        if (exc_fano->parsed()) {
            if (g.type != "E7") throw CLI::ValidationError("fano requires --type E7");
            Ctx& c = ctx_for(g);
            FanoE7 fano(c.qp);
            int id;
            if (element == "thetaC") id = c.qp.theta_C();
            else if (element == "thetaN") id = c.qp.theta_N();
            else {
                try {
                    id = std::stoi(element);
                } catch (...) {
                    throw std::invalid_argument("unknown element: " + element);
                }
                if (!fano.labellings().count(id))
                    throw std::invalid_argument(
                        "element " + element + " is not an alignment-free 7-root");
            }
            std::string line;
            for (const auto& t : fano.labellings().at(id))
                line += (line.empty() ? "" : " ") + FanoE7::triple_str(t);
            emit(g, line + "\n");
            return 0;
        }
        if (verify->parsed()) return run_verify(g, trials);
        if (exp->parsed()) {
            if (exp_kind == "report") return run_verify(g, 100);
            emit(g, render_export(g, exp_kind));
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
