// Command-line interface for Bell-diagonal steering analysis.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "steerlab/steerlab.hpp"

namespace {

using steerlab::BellDiagonalState;
using steerlab::SteeringReport;

nlohmann::json report_to_json(const SteeringReport& r) {
    nlohmann::json j;
    j["t"] = {r.t.x, r.t.y, r.t.z};
    j["probabilities"] = r.probabilities;
    j["C"] = r.concurrence;
    j["S"] = r.s;
    j["chsh"] = r.chsh;
    j["normS"] = r.normalized_s;
    j["V"] = r.volume;
    j["frob"] = r.frobenius;
    j["s3lb"] = r.s3_lower;
    if (r.s3_estimate)
        j["s3est"] = *r.s3_estimate;
    else
        j["s3est"] = nullptr;
    j["class"] = steerlab::to_string(r.cls);
    return j;
}

void print_report_text(const SteeringReport& r) {
    std::cout << "t        = (" << steerlab::fmt17(r.t.x) << ", " << steerlab::fmt17(r.t.y)
              << ", " << steerlab::fmt17(r.t.z) << ")\n";
    std::cout << "probs    = (" << steerlab::fmt17(r.probabilities[0]) << ", "
              << steerlab::fmt17(r.probabilities[1]) << ", "
              << steerlab::fmt17(r.probabilities[2]) << ", "
              << steerlab::fmt17(r.probabilities[3]) << ")\n";
    std::cout << "C        = " << steerlab::fmt17(r.concurrence) << "\n";
    std::cout << "S        = " << steerlab::fmt17(r.s) << "\n";
    std::cout << "chsh     = " << steerlab::fmt17(r.chsh) << "\n";
    std::cout << "normS    = " << steerlab::fmt17(r.normalized_s) << "\n";
    std::cout << "V        = " << steerlab::fmt17(r.volume) << "\n";
    std::cout << "frob     = " << steerlab::fmt17(r.frobenius) << "\n";
    std::cout << "s3lb     = " << steerlab::fmt17(r.s3_lower) << "\n";
    if (r.s3_estimate) std::cout << "s3est    = " << steerlab::fmt17(*r.s3_estimate) << "\n";
    std::cout << "class    = " << steerlab::to_string(r.cls) << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw CLI::ValidationError("cannot open output file: " + path);
    return os;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steerability of two-qubit Bell-diagonal states under two and "
                 "three projective measurements"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "analyze a single state");
    std::vector<double> opt_t, opt_probs;
    double opt_werner = 0.0, opt_edge = 0.0;
    bool with_s3 = false, as_json = false;
    std::uint64_t seed = 0;
    auto* ot = analyze->add_option("--t", opt_t, "correlation triple t1,t2,t3")
                   ->delimiter(',')
                   ->expected(3);
    auto* op = analyze->add_option("--probs", opt_probs, "Bell probabilities p00,p01,p10,p11")
                   ->delimiter(',')
                   ->expected(4);
    auto* ow = analyze->add_option("--werner", opt_werner, "Werner state parameter f");
    auto* oe = analyze->add_option("--edge", opt_edge, "edge state parameter p");
    ot->excludes(op)->excludes(ow)->excludes(oe);
    op->excludes(ow)->excludes(oe);
    ow->excludes(oe);
    analyze->add_flag("--s3-estimate", with_s3, "run the S3 multistart estimator");
    analyze->add_option("--seed", seed, "RNG seed");
    analyze->add_flag("--json", as_json, "emit JSON");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep a named family");
    std::string family, out_path;
    double from = 0.0, to = 1.0, step = 0.01;
    sweep->add_option("--family", family, "werner or edge")
        ->required()
        ->check(CLI::IsMember({"werner", "edge"}));
    sweep->add_option("--from", from)->required();
    sweep->add_option("--to", to)->required();
    sweep->add_option("--step", step)->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();

    // sample
    auto* sample = app.add_subcommand("sample", "Monte Carlo sample of the tetrahedron");
    std::uint64_t n = 0, sample_seed = 0;
    std::string sample_out;
    sample->add_option("--n", n)->required();
    sample->add_option("--seed", sample_seed)->required();
    sample->add_option("--out", sample_out, "output CSV path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "check all inequality bounds on samples");
    std::uint64_t vn = 0, vseed = 0;
    bool strict = false;
    verify->add_option("--n", vn)->required();
    verify->add_option("--seed", vseed)->required();
    verify->add_flag("--strict", strict, "fail on any positive violation");

    // regions
    auto* regions = app.add_subcommand("regions", "classify a planar slice of the tetrahedron");
    std::string axis;
    double value = 0.0;
    int res = 0;
    std::string regions_out;
    regions->add_option("--axis", axis)->required()->check(CLI::IsMember({"t1", "t2", "t3"}));
    regions->add_option("--value", value)->required();
    regions->add_option("--res", res)->required();
    regions->add_option("--out", regions_out, "output CSV path")->required();

    // thresholds
    auto* thresholds = app.add_subcommand("thresholds", "bisected family transition points");
    std::string th_family;
    thresholds->add_option("--family", th_family)->required()->check(CLI::IsMember({"werner"}));

    // ft
    auto* ft = app.add_subcommand("ft", "Fermat-Toricelli point of four 3-vectors");
    std::string points_path;
    ft->add_option("--points", points_path, "file with four whitespace-separated 3-vectors")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            BellDiagonalState st = [&] {
                if (!opt_t.empty()) return steerlab::from_t(opt_t[0], opt_t[1], opt_t[2]);
                if (!opt_probs.empty())
                    return steerlab::from_probabilities(opt_probs[0], opt_probs[1],
                                                        opt_probs[2], opt_probs[3]);
                if (*ow) return steerlab::werner(opt_werner);
                if (*oe) return steerlab::edge(opt_edge);
                throw CLI::ValidationError(
                    "analyze: one of --t/--probs/--werner/--edge is required");
            }();
            SteeringReport r = steerlab::report(st, with_s3, seed);
            if (as_json)
                std::cout << report_to_json(r).dump(2) << "\n";
            else
                print_report_text(r);
        } else if (*sweep) {
            auto rows = steerlab::sweep_family(
                family == "werner" ? steerlab::Family::werner : steerlab::Family::edge,
                from, to, step);
            auto os = open_out(out_path);
            steerlab::write_csv(os, rows);
        } else if (*sample) {
            auto states = steerlab::sample_states(n, sample_seed);
            std::vector<SteeringReport> rows;
            rows.reserve(states.size());
            for (const auto& st : states) rows.push_back(steerlab::report(st));
            auto os = open_out(sample_out);
            steerlab::write_csv(os, rows);
        } else if (*verify) {
            auto rep = steerlab::verify_inequalities(vn, vseed, strict ? 0.0 : 1e-9);
            bool ok = rep.pass();
            for (const auto& b : rep.bounds)
                std::cout << (b.max_violation > rep.threshold ? "VIOLATED " : "ok       ")
                          << b.name << "  samples=" << b.count
                          << "  max_violation=" << steerlab::fmt17(b.max_violation)
                          << "  worst_t=(" << steerlab::fmt17(b.worst_t.x) << ","
                          << steerlab::fmt17(b.worst_t.y) << ","
                          << steerlab::fmt17(b.worst_t.z) << ")\n";
            for (const auto& s : rep.saturations)
                std::cout << (s.pass ? "ok       " : "VIOLATED ") << s.name
                          << "  max_deviation=" << steerlab::fmt17(s.max_deviation) << "\n";
            std::cout << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        } else if (*regions) {
            steerlab::Axis ax = axis == "t1" ? steerlab::Axis::t1
                                             : (axis == "t2" ? steerlab::Axis::t2
                                                             : steerlab::Axis::t3);
            auto slice = steerlab::region_slice(ax, value, res);
            auto os = open_out(regions_out);
            const char* names[3][2] = {{"t2", "t3"}, {"t1", "t3"}, {"t1", "t2"}};
            int ai = static_cast<int>(ax);
            os << names[ai][0] << ',' << names[ai][1] << ",class\n";
            for (const auto& c : slice.cells)
                os << steerlab::fmt17(c.a) << ',' << steerlab::fmt17(c.b) << ','
                   << (c.valid ? steerlab::to_string(c.cls) : "invalid") << '\n';
        } else if (*thresholds) {
            auto th = steerlab::werner_thresholds();
            std::cout << "separability f = " << steerlab::fmt17(th.separability) << "\n";
            std::cout << "steerable3-certificate f = " << steerlab::fmt17(th.three_cert)
                      << "\n";
            std::cout << "steerable2 f = " << steerlab::fmt17(th.two_steer) << "\n";
        } else if (*ft) {
            std::ifstream is(points_path);
            if (!is) throw CLI::ValidationError("cannot open points file: " + points_path);
            std::array<steerlab::Vec3, 4> pts;
            for (auto& p : pts)
                if (!(is >> p.x >> p.y >> p.z))
                    throw CLI::ValidationError("points file must contain four 3-vectors");
            auto sol = steerlab::weiszfeld(pts);
            std::cout << "ft = (" << steerlab::fmt17(sol.ft.x) << ", "
                      << steerlab::fmt17(sol.ft.y) << ", " << steerlab::fmt17(sol.ft.z)
                      << ")\n";
            std::cout << "total_distance = " << steerlab::fmt17(sol.total_distance) << "\n";
            if (!sol.converged) {
                std::cerr << "warning: solver did not converge\n";
                return 1;
            }
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
