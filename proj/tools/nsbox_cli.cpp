// Command line front end for the nsbox headers: validation, vertex
// tables, decomposition, Bell / Hardy / information-causality values,
// two-qubit optimizers and the consolidated report.
//
// Exit codes: 0 success, 1 failed check (invalid box, infeasible
// decomposition, failing report), 2 usage or input errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsbox/behavior.hpp"
#include "nsbox/behavior_io.hpp"
#include "nsbox/bell.hpp"
#include "nsbox/bounds.hpp"
#include "nsbox/hardy.hpp"
#include "nsbox/infocausality.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/quantum.hpp"
#include "nsbox/report.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.9g", v);
    return buf;
}

double round9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

nsbox::Behavior load_behavior(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw nsbox::ParseError(path, "cannot open file");
    try {
        return nsbox::read_behavior(in);
    } catch (const nsbox::ParseError& e) {
        throw nsbox::ParseError(path, e.what());
    }
}

void save_behavior(const std::string& path, const nsbox::Behavior& b) {
    std::ofstream out(path);
    out << nsbox::write_behavior(b);
    if (!out)
        throw nsbox::ParseError(path, "cannot write file");
}

ordered_json behavior_json(const nsbox::Behavior& b) {
    ordered_json p = ordered_json::array();
    for (int X : {0, 1}) {
        ordered_json jx = ordered_json::array();
        for (int Y : {0, 1}) {
            ordered_json jy = ordered_json::array();
            for (int a : {0, 1})
                jy.push_back({b.p(X, Y, a, 0), b.p(X, Y, a, 1)});
            jx.push_back(jy);
        }
        p.push_back(jx);
    }
    return p;
}

const char* yesno(bool v) { return v ? "yes" : "no"; }

int cmd_verify(const std::string& file, bool json) {
    const nsbox::Behavior b = load_behavior(file);
    const nsbox::ValidityReport r = nsbox::validate(b);
    if (json) {
        ordered_json o;
        o["normalization_residual"] = round9(r.normalization_residual);
        o["max_negativity"] = round9(r.max_negativity);
        o["alice_marginal_residual"] = round9(r.alice_marginal_residual);
        o["bob_marginal_residual"] = round9(r.bob_marginal_residual);
        o["normalized"] = r.normalized;
        o["nonnegative"] = r.nonnegative;
        o["no_signaling"] = r.is_no_signaling;
        o["valid"] = r.valid();
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "normalization residual   " << fmt9(r.normalization_residual) << "\n"
                  << "max negativity           " << fmt9(r.max_negativity) << "\n"
                  << "alice marginal residual  " << fmt9(r.alice_marginal_residual) << "\n"
                  << "bob marginal residual    " << fmt9(r.bob_marginal_residual) << "\n"
                  << "normalized               " << yesno(r.normalized) << "\n"
                  << "nonnegative              " << yesno(r.nonnegative) << "\n"
                  << "no-signaling             " << yesno(r.is_no_signaling) << "\n"
                  << "valid                    " << yesno(r.valid()) << "\n";
    }
    return r.valid() ? 0 : 1;
}

int cmd_vertices(bool local_only, bool nonlocal_only, const std::string& out_dir, bool json) {
    std::vector<nsbox::VertexLabel> labels;
    for (const auto& l : nsbox::all_vertex_labels()) {
        if (local_only && l.kind != nsbox::VertexKind::Local) continue;
        if (nonlocal_only && l.kind != nsbox::VertexKind::NonLocal) continue;
        labels.push_back(l);
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& l : labels)
            save_behavior(out_dir + "/" + l.str() + ".json", nsbox::vertex(l));
    }
    if (json) {
        ordered_json o;
        for (const auto& l : labels) o[l.str()] = behavior_json(nsbox::vertex(l));
        std::cout << o.dump(2) << "\n";
    } else {
        for (const auto& l : labels) {
            std::cout << l.str() << " ";
            const nsbox::Behavior v = nsbox::vertex(l);
            for (int i = 0; i < 16; ++i) std::cout << " " << fmt9(v.table[i]);
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_decompose(const std::string& file, bool local, bool json) {
    const nsbox::Behavior b = load_behavior(file);
    if (!nsbox::validate(b).valid()) {
        std::cerr << "decompose: input behavior is not a valid no-signaling box; run verify\n";
        return 1;
    }

    bool feasible;
    double violation;
    std::vector<std::pair<std::string, double>> weights;
    if (local) {
        const nsbox::LocalityCheck r = nsbox::is_local(b);
        feasible = r.local;
        violation = r.max_violation;
        for (int k = 0; k < nsbox::kNumLocalVertices; ++k)
            if (r.local_weights[k] > 1e-12)
                weights.emplace_back(nsbox::all_vertex_labels()[k].str(), r.local_weights[k]);
    } else {
        const nsbox::DecomposeOutcome r = nsbox::decompose(b);
        feasible = r.feasible;
        violation = r.max_violation;
        for (int k = 0; k < nsbox::kNumVertices; ++k)
            if (r.decomposition.weights[k] > 1e-12)
                weights.emplace_back(nsbox::all_vertex_labels()[k].str(),
                                     r.decomposition.weights[k]);
    }
    if (!feasible) weights.clear();

    if (json) {
        ordered_json o;
        o["feasible"] = feasible;
        o["max_violation"] = round9(violation);
        ordered_json w = ordered_json::object();
        for (const auto& [name, wt] : weights) w[name] = wt;
        o["weights"] = w;
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "feasible       " << yesno(feasible) << "\n"
                  << "max violation  " << fmt9(violation) << "\n";
        for (const auto& [name, wt] : weights)
            std::cout << name << "  " << fmt9(wt) << "\n";
    }
    return feasible ? 0 : 1;
}

void print_bell_row(const nsbox::BellLabel& l, const nsbox::BellValue& v) {
    std::cout << "label " << l.str() << "  b " << fmt9(v.b) << "  b' " << fmt9(v.b_prime)
              << "  regime " << nsbox::to_string(nsbox::classify(v)) << "\n";
}

ordered_json bell_json_row(const nsbox::BellLabel& l, const nsbox::BellValue& v) {
    ordered_json o;
    o["label"] = l.str();
    o["b"] = round9(v.b);
    o["b_prime"] = round9(v.b_prime);
    o["regime"] = nsbox::to_string(nsbox::classify(v));
    return o;
}

int cmd_bell(const std::string& file, const std::string& label, bool all, bool json) {
    const nsbox::Behavior b = load_behavior(file);
    if (all) {
        ordered_json arr = ordered_json::array();
        for (const auto& l : nsbox::all_bell_labels()) {
            const nsbox::BellValue v = nsbox::bell_value(b, l);
            if (json)
                arr.push_back(bell_json_row(l, v));
            else
                print_bell_row(l, v);
        }
        if (json) std::cout << arr.dump(2) << "\n";
        return 0;
    }
    nsbox::BellLabel l{};
    nsbox::BellValue v{};
    if (label.empty()) {
        const auto best = nsbox::max_bell(b);
        l = best.first;
        v = best.second;
    } else {
        l = nsbox::BellLabel::parse(label);
        v = nsbox::bell_value(b, l);
    }
    if (json)
        std::cout << bell_json_row(l, v).dump(2) << "\n";
    else
        print_bell_row(l, v);
    return 0;
}

void print_hardy_stats(const nsbox::Behavior& b, bool json) {
    const nsbox::HardyStats s = nsbox::hardy_stats(b);
    const nsbox::BellValue v = nsbox::bell_value(b, nsbox::kHardyBellLabel);
    const bool zeros_hold =
        s.zero_residuals[0] < nsbox::kValidityTol && s.zero_residuals[1] < nsbox::kValidityTol;
    if (json) {
        ordered_json o;
        o["q1"] = round9(s.q1);
        o["q2"] = round9(s.q2);
        o["w"] = round9(s.w);
        o["zero_residuals"] = {round9(s.zero_residuals[0]), round9(s.zero_residuals[1])};
        o["b_001"] = round9(v.b);
        o["satisfies_hardy"] = s.satisfies_hardy();
        o["satisfies_cabello"] = s.satisfies_cabello();
        if (zeros_hold && s.q1 < nsbox::kValidityTol)
            o["identity_q2_deviation"] = round9(std::abs(v.b - (2.0 + 4.0 * s.q2)));
        if (zeros_hold)
            o["identity_w_deviation"] = round9(std::abs(v.b - (2.0 + 4.0 * s.w)));
        std::cout << o.dump(2) << "\n";
        return;
    }
    std::cout << "q1         " << fmt9(s.q1) << "\n"
              << "q2         " << fmt9(s.q2) << "\n"
              << "w          " << fmt9(s.w) << "\n"
              << "p(11|10)   " << fmt9(s.zero_residuals[0]) << "\n"
              << "p(11|01)   " << fmt9(s.zero_residuals[1]) << "\n"
              << "b(001)     " << fmt9(v.b) << "\n"
              << "hardy      " << yesno(s.satisfies_hardy()) << "\n"
              << "cabello    " << yesno(s.satisfies_cabello()) << "\n";
    if (zeros_hold && s.q1 < nsbox::kValidityTol)
        std::cout << "identity b = 2 + 4 q2, deviation "
                  << fmt9(std::abs(v.b - (2.0 + 4.0 * s.q2))) << "\n";
    if (zeros_hold)
        std::cout << "identity b = 2 + 4 w, deviation "
                  << fmt9(std::abs(v.b - (2.0 + 4.0 * s.w))) << "\n";
}

int cmd_hardy_build(const std::vector<double>& coeffs, const std::string& out, bool json) {
    const auto hc = nsbox::HardyCoefficients::validated(coeffs);
    const nsbox::Behavior b =
        hc.cabello() ? nsbox::build_cabello_box(hc) : nsbox::build_hardy_box(hc);
    if (!out.empty()) save_behavior(out, b);
    print_hardy_stats(b, json);
    return 0;
}

int cmd_ic(const std::string& file, const std::string& label, bool all, bool json) {
    const nsbox::Behavior b = load_behavior(file);
    std::vector<nsbox::BellLabel> labels;
    if (all || label.empty())
        labels.assign(nsbox::all_bell_labels().begin(), nsbox::all_bell_labels().end());
    else
        labels.push_back(nsbox::BellLabel::parse(label));

    ordered_json arr = ordered_json::array();
    for (const auto& l : labels) {
        const nsbox::ICStats s = nsbox::ic_stats(b, l);
        if (json) {
            ordered_json o;
            o["label"] = l.str();
            o["p1"] = round9(s.p1);
            o["p2"] = round9(s.p2);
            o["a_value"] = round9(s.a_value);
            o["theta"] = round9(s.theta);
            o["satisfied"] = s.ic_satisfied;
            o["b_prime_cap"] = round9(nsbox::bprime_bound(s.a_value));
            arr.push_back(o);
        } else {
            std::cout << "label " << l.str() << "  p1 " << fmt9(s.p1) << "  p2 " << fmt9(s.p2)
                      << "  a " << fmt9(s.a_value) << "  theta " << fmt9(s.theta)
                      << "  satisfied " << yesno(s.ic_satisfied) << "  b' cap "
                      << fmt9(nsbox::bprime_bound(s.a_value)) << "\n";
        }
    }
    if (json) std::cout << (labels.size() == 1 ? arr[0].dump(2) : arr.dump(2)) << "\n";
    return 0;
}

void print_setup(const nsbox::QuantumSetup& s, ordered_json* o) {
    if (o) {
        (*o)["tau"] = round9(s.tau);
        (*o)["angles"] = {round9(s.angles[0]), round9(s.angles[1]), round9(s.angles[2]),
                          round9(s.angles[3])};
        return;
    }
    std::cout << "tau        " << fmt9(s.tau) << "\n"
              << "angles     " << fmt9(s.angles[0]) << " " << fmt9(s.angles[1]) << " "
              << fmt9(s.angles[2]) << " " << fmt9(s.angles[3]) << "\n";
}

int cmd_quantum_tsirelson(int starts, std::uint64_t seed, const std::string& out, bool json) {
    const nsbox::TsirelsonResult r = nsbox::optimize_tsirelson(starts, seed);
    if (!out.empty()) save_behavior(out, nsbox::born_behavior(r.setup));
    if (json) {
        ordered_json o;
        print_setup(r.setup, &o);
        o["label"] = r.label.str();
        o["b"] = round9(r.value.b);
        o["b_prime"] = round9(r.value.b_prime);
        std::cout << o.dump(2) << "\n";
    } else {
        print_setup(r.setup, nullptr);
        print_bell_row(r.label, r.value);
    }
    return 0;
}

int cmd_quantum_hardy(int starts, std::uint64_t seed, const std::string& out, bool json) {
    const nsbox::QuantumHardyResult r = nsbox::optimize_hardy(starts, seed);
    if (!out.empty()) save_behavior(out, nsbox::born_behavior(r.setup));
    if (json) {
        ordered_json o;
        print_setup(r.setup, &o);
        o["q1"] = round9(r.stats.q1);
        o["q2"] = round9(r.stats.q2);
        o["zero_residuals"] = {round9(r.stats.zero_residuals[0]),
                               round9(r.stats.zero_residuals[1])};
        o["max_constraint"] = round9(r.max_constraint);
        std::cout << o.dump(2) << "\n";
    } else {
        print_setup(r.setup, nullptr);
        std::cout << "q1         " << fmt9(r.stats.q1) << "\n"
                  << "q2         " << fmt9(r.stats.q2) << "\n"
                  << "residuals  " << fmt9(r.stats.zero_residuals[0]) << " "
                  << fmt9(r.stats.zero_residuals[1]) << "\n"
                  << "max constraint " << fmt9(r.max_constraint) << "\n";
    }
    return 0;
}

int cmd_bound(const std::string& family, const std::string& constraint, int starts,
              std::uint64_t seed, bool json) {
    const nsbox::Family f = family == "hardy" ? nsbox::Family::Hardy : nsbox::Family::Cabello;
    const nsbox::BoundResult r = constraint == "ns"
                                     ? nsbox::max_under_no_signaling(f)
                                     : nsbox::max_under_ic(f, starts, seed);
    if (json) {
        ordered_json o;
        o["family"] = nsbox::to_string(r.family);
        o["constraint"] = nsbox::to_string(r.constraint);
        o["value"] = round9(r.value);
        o["witness"] = r.witness.c;
        o["a_value"] = round9(r.witness_ic.a_value);
        o["b"] = round9(r.witness_bell.b);
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "family      " << nsbox::to_string(r.family) << "\n"
                  << "constraint  " << nsbox::to_string(r.constraint) << "\n"
                  << "value       " << fmt9(r.value) << "\n";
        std::cout << "witness    ";
        for (double v : r.witness.c) std::cout << " " << fmt9(v);
        std::cout << "\n"
                  << "a value     " << fmt9(r.witness_ic.a_value) << "\n"
                  << "b(001)      " << fmt9(r.witness_bell.b) << "\n";
    }
    return 0;
}

int cmd_report(std::uint64_t seed, int starts, const std::string& out, bool json) {
    const nsbox::Report rep = nsbox::full_report(seed, starts);
    const std::string text =
        json ? nsbox::report_to_json(rep) : nsbox::report_to_text(rep);
    std::cout << text;
    if (!out.empty()) {
        std::ofstream f(out);
        f << text;
        if (!f)
            throw nsbox::ParseError(out, "cannot write file");
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-party binary no-signaling box toolkit"};
    app.require_subcommand(1);

    int rc = 0;

    // verify
    std::string vf_file;
    bool vf_json = false;
    auto* verify = app.add_subcommand("verify", "validate a behavior file");
    verify->add_option("file", vf_file, "behavior JSON file")->required();
    verify->add_flag("--json", vf_json, "JSON output");
    verify->callback([&] { rc = cmd_verify(vf_file, vf_json); });

    // vertices
    bool vx_local = false, vx_nonlocal = false, vx_json = false;
    std::string vx_out;
    auto* vertices = app.add_subcommand("vertices", "list polytope vertices");
    vertices->add_flag("--local", vx_local, "local vertices only");
    vertices->add_flag("--nonlocal", vx_nonlocal, "nonlocal vertices only");
    vertices->add_option("--out-dir", vx_out, "write one behavior file per vertex");
    vertices->add_flag("--json", vx_json, "JSON output");
    vertices->callback([&] { rc = cmd_vertices(vx_local, vx_nonlocal, vx_out, vx_json); });

    // decompose
    std::string dc_file;
    bool dc_local = false, dc_json = false;
    auto* decompose = app.add_subcommand("decompose", "vertex decomposition of a behavior");
    decompose->add_option("file", dc_file, "behavior JSON file")->required();
    decompose->add_flag("--local", dc_local, "restrict to the 16 local vertices");
    decompose->add_flag("--json", dc_json, "JSON output");
    decompose->callback([&] { rc = cmd_decompose(dc_file, dc_local, dc_json); });

    // bell
    std::string bl_file, bl_label;
    bool bl_all = false, bl_json = false;
    auto* bell = app.add_subcommand("bell", "Bell operator values");
    bell->add_option("file", bl_file, "behavior JSON file")->required();
    bell->add_option("--label", bl_label, "operator label, e.g. 001");
    bell->add_flag("--all", bl_all, "all eight operators");
    bell->add_flag("--json", bl_json, "JSON output");
    bell->callback([&] { rc = cmd_bell(bl_file, bl_label, bl_all, bl_json); });

    // hardy + hardy build
    std::string hd_file;
    bool hd_json = false;
    auto* hardy = app.add_subcommand("hardy", "Hardy / Cabello statistics");
    hardy->add_option("file", hd_file, "behavior JSON file");
    hardy->add_flag("--json", hd_json, "JSON output");
    std::vector<double> hb_coeffs;
    std::string hb_out;
    bool hb_json = false;
    auto* hardy_build = hardy->add_subcommand("build", "build a family box from coefficients");
    hardy_build->add_option("--coeffs", hb_coeffs, "6 or 11 comma separated weights")
        ->required()
        ->delimiter(',');
    hardy_build->add_option("--out", hb_out, "write the behavior to a file");
    hardy_build->add_flag("--json", hb_json, "JSON output");
    hardy->callback([&] {
        if (hardy_build->parsed()) {
            rc = cmd_hardy_build(hb_coeffs, hb_out, hb_json);
        } else {
            if (hd_file.empty())
                throw CLI::ValidationError("hardy", "need a behavior file or the build subcommand");
            const nsbox::Behavior b = load_behavior(hd_file);
            print_hardy_stats(b, hd_json);
            rc = 0;
        }
    });

    // ic
    std::string ic_file, ic_label;
    bool ic_all = false, ic_json = false;
    auto* ic = app.add_subcommand("ic", "information-causality statistics");
    ic->add_option("file", ic_file, "behavior JSON file")->required();
    ic->add_option("--label", ic_label, "operator label, e.g. 001");
    ic->add_flag("--all", ic_all, "all eight operators");
    ic->add_flag("--json", ic_json, "JSON output");
    ic->callback([&] { rc = cmd_ic(ic_file, ic_label, ic_all, ic_json); });

    // quantum
    auto* quantum = app.add_subcommand("quantum", "two-qubit optimizers");
    quantum->require_subcommand(1);
    int qt_starts = 200;
    std::uint64_t qt_seed = nsbox::kDefaultSeed;
    std::string qt_out;
    bool qt_json = false;
    auto* qts = quantum->add_subcommand("tsirelson", "maximize the Bell value");
    qts->add_option("--starts", qt_starts, "multi-start count");
    qts->add_option("--seed", qt_seed, "rng seed");
    qts->add_option("--out", qt_out, "write the optimal behavior to a file");
    qts->add_flag("--json", qt_json, "JSON output");
    qts->callback([&] { rc = cmd_quantum_tsirelson(qt_starts, qt_seed, qt_out, qt_json); });
    int qh_starts = 200;
    std::uint64_t qh_seed = nsbox::kDefaultSeed;
    std::string qh_out;
    bool qh_json = false;
    auto* qhm = quantum->add_subcommand("hardy-max", "maximize q2 under the zero constraints");
    qhm->add_option("--starts", qh_starts, "multi-start count");
    qhm->add_option("--seed", qh_seed, "rng seed");
    qhm->add_option("--out", qh_out, "write the optimal behavior to a file");
    qhm->add_flag("--json", qh_json, "JSON output");
    qhm->callback([&] { rc = cmd_quantum_hardy(qh_starts, qh_seed, qh_out, qh_json); });

    // bound
    std::string bd_family, bd_constraint;
    int bd_starts = 200;
    std::uint64_t bd_seed = nsbox::kDefaultSeed;
    bool bd_json = false;
    auto* bound = app.add_subcommand("bound", "family maxima under a constraint set");
    bound->add_option("--family", bd_family, "hardy or cabello")
        ->required()
        ->check(CLI::IsMember({"hardy", "cabello"}));
    bound->add_option("--constraint", bd_constraint, "ns or ic")
        ->required()
        ->check(CLI::IsMember({"ns", "ic"}));
    bound->add_option("--starts", bd_starts, "multi-start count (ic only)");
    bound->add_option("--seed", bd_seed, "rng seed (ic only)");
    bound->add_flag("--json", bd_json, "JSON output");
    bound->callback([&] { rc = cmd_bound(bd_family, bd_constraint, bd_starts, bd_seed, bd_json); });

    // report
    std::uint64_t rp_seed = nsbox::kDefaultSeed;
    int rp_starts = 200;
    std::string rp_out;
    bool rp_json = false;
    auto* report = app.add_subcommand("report", "recompute every headline number");
    report->add_option("--seed", rp_seed, "rng seed");
    report->add_option("--starts", rp_starts, "multi-start count for the optimizers");
    report->add_option("--out", rp_out, "also write the report to a file");
    report->add_flag("--json", rp_json, "JSON output");
    report->callback([&] { rc = cmd_report(rp_seed, rp_starts, rp_out, rp_json); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const nsbox::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
