// diracsol: energy spectra, radial spinors, parameter maps, XPCT transforms
// and closed-form-vs-oracle verification for the nine-potential catalog.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirac/errors.hpp"
#include "dirac/oracle.hpp"
#include "dirac/parameter_maps.hpp"
#include "dirac/spectra.hpp"
#include "dirac/verify.hpp"
#include "dirac/wavefunctions.hpp"
#include "dirac/xpct.hpp"

using nlohmann::json;
using namespace dirac;

namespace {

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct PotentialFlags {
    double Z = 0.0, omega = 0.0, A = 0.0, B = 0.0, range_lambda = 1.0, R = 1.0;
    bool has_Z = false, has_omega = false, has_A = false, has_B = false, has_R = false;
};

void add_potential_flags(CLI::App* cmd, PotentialFlags& pf) {
    cmd->add_option("--Z", pf.Z, "Coulomb charge")->each([&pf](const std::string&) { pf.has_Z = true; });
    cmd->add_option("--omega", pf.omega, "oscillator frequency")
        ->each([&pf](const std::string&) { pf.has_omega = true; });
    cmd->add_option("--A", pf.A, "strength A")->each([&pf](const std::string&) { pf.has_A = true; });
    cmd->add_option("--B", pf.B, "strength B")->each([&pf](const std::string&) { pf.has_B = true; });
    cmd->add_option("--range-lambda", pf.range_lambda, "range parameter lambda");
    cmd->add_option("--R", pf.R, "Woods-Saxon radius")->each([&pf](const std::string&) { pf.has_R = true; });
}

PotentialSpec build_spec(const std::string& name, const PotentialFlags& pf) {
    PotentialTag tag;
    try {
        tag = tag_from_string(name);
    } catch (const DomainError& e) {
        throw CLI::ValidationError(std::string(e.what()) +
                                   " (see --help for the catalog names)");
    }
    switch (tag) {
        case PotentialTag::Coulomb:
            if (!pf.has_Z) throw CLI::ValidationError("coulomb requires --Z");
            return PotentialSpec(CoulombPot{pf.Z});
        case PotentialTag::Oscillator:
            if (!pf.has_omega) throw CLI::ValidationError("oscillator requires --omega");
            return PotentialSpec(OscillatorPot{pf.omega});
        case PotentialTag::WoodsSaxon:
            if (!pf.has_B || !pf.has_R)
                throw CLI::ValidationError("woods-saxon requires --B and --R");
            return PotentialSpec(WoodsSaxonPot{pf.B, pf.R, pf.range_lambda});
        default: {
            if (!pf.has_A || !pf.has_B)
                throw CLI::ValidationError(std::string(to_string(tag)) +
                                           " requires --A and --B");
            switch (tag) {
                case PotentialTag::Morse: return PotentialSpec(MorsePot{pf.A, pf.B, pf.range_lambda});
                case PotentialTag::RosenMorse1:
                    return PotentialSpec(RosenMorse1Pot{pf.A, pf.B, pf.range_lambda});
                case PotentialTag::Eckart: return PotentialSpec(EckartPot{pf.A, pf.B, pf.range_lambda});
                case PotentialTag::RosenMorse2:
                    return PotentialSpec(RosenMorse2Pot{pf.A, pf.B, pf.range_lambda});
                case PotentialTag::Scarf: return PotentialSpec(ScarfPot{pf.A, pf.B, pf.range_lambda});
                default: return PotentialSpec(PoschlTellerPot{pf.A, pf.B, pf.range_lambda});
            }
        }
    }
}

std::vector<int> parse_levels(const std::string& s) {
    std::vector<int> out;
    auto range = s.find("..");
    if (range != std::string::npos) {
        int a = std::stoi(s.substr(0, range));
        int b = std::stoi(s.substr(range + 2));
        for (int n = a; n <= b; ++n) out.push_back(n);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw DomainError("cannot open output file: " + path);
    f << text;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& pot, const PotentialFlags& pf, double lb, int kappa,
                 const std::string& levels, const std::string& branch, int sign,
                 const std::string& format, const std::string& out) {
    PotentialSpec spec = build_spec(pot, pf);
    RelativisticContext ctx{lb};
    SpectrumRequest req{spec, ctx, AngularChannel{kappa},
                        branch == "irregular" ? Branch::Irregular : Branch::Regular, sign,
                        parse_levels(levels)};
    auto states = spectra::energies(req);

    std::ostringstream os;
    if (format == "json") {
        json rows = json::array();
        for (const auto& st : states)
            rows.push_back({{"n", st.n},
                            {"branch", st.branch == Branch::Regular ? "regular" : "irregular"},
                            {"sign", st.energy_sign},
                            {"epsilon", st.epsilon},
                            {"E_nonrel", parameter_maps::nonrel_limit_energy(st.epsilon, ctx)}});
        json j = {{"command", "spectrum"}, {"potential", spec.to_json()},
                  {"lambda_bar", lb}, {"kappa", kappa}, {"states", rows}};
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "n,branch,sign,epsilon,E_nonrel\n";
        for (const auto& st : states)
            os << st.n << "," << (st.branch == Branch::Regular ? "regular" : "irregular")
               << "," << st.energy_sign << "," << fmt15(st.epsilon) << ","
               << fmt15(parameter_maps::nonrel_limit_energy(st.epsilon, ctx)) << "\n";
    } else {
        os << "# " << spec.name() << "  lambda_bar=" << fmt6(lb) << "  kappa=" << kappa
           << "\n";
        os << "  n  branch     sign  epsilon         E_nonrel\n";
        for (const auto& st : states) {
            char line[160];
            std::snprintf(line, sizeof line, "%3d  %-9s  %+d    %-14.6g  %-14.6g\n", st.n,
                          st.branch == Branch::Regular ? "regular" : "irregular",
                          st.energy_sign, st.epsilon,
                          parameter_maps::nonrel_limit_energy(st.epsilon, ctx));
            os << line;
        }
    }
    write_out(out, os.str());
    return 0;
}

// ------------------------------------------------------------ wavefunction

int cmd_wavefunction(const std::string& pot, const PotentialFlags& pf, double lb,
                     int kappa, int n, const std::string& branch, const std::string& comp,
                     const std::string& via, int points, const std::string& out) {
    PotentialSpec spec = build_spec(pot, pf);
    RelativisticContext ctx{lb};
    AngularChannel ch{kappa};
    TransformParameters tp = derive_transform(spec, ctx, ch);
    Branch br = branch == "irregular" ? Branch::Irregular : Branch::Regular;
    SpectrumRequest req{spec, ctx, ch, br, +1, {n}};
    BoundState st = spectra::energies(req)[0];
    auto grid = wavefunctions::make_grid(st, spec, ctx, ch, points);

    bool via_balance = via == "balance";
    if (!via_balance && !wavefunctions::has_closed_lower(spec.tag()) && comp != "plus")
        throw Unsupported(std::string(spec.name()) +
                          ": no closed lower component; use --via=balance");
    RadialSpinor sp = wavefunctions::make_spinor(st, spec, ctx, ch, tp, grid, via_balance);
    wavefunctions::normalize(sp);

    std::ostringstream os;
    os << "r,phi_plus,phi_minus\n";
    for (std::size_t i = 0; i < sp.r.size(); ++i) {
        double up = comp == "minus" ? 0.0 : sp.phi_plus[i];
        double lo = comp == "plus" ? 0.0 : sp.phi_minus[i];
        os << fmt15(sp.r[i]) << "," << fmt15(up) << "," << fmt15(lo) << "\n";
    }
    write_out(out, os.str());

    json side = {{"command", "wavefunction"},
                 {"potential", spec.to_json()},
                 {"lambda_bar", lb},
                 {"kappa", kappa},
                 {"state",
                  {{"n", st.n},
                   {"branch", br == Branch::Regular ? "regular" : "irregular"},
                   {"sign", st.energy_sign},
                   {"epsilon", st.epsilon}}},
                 {"component", comp},
                 {"via", via},
                 {"points", points},
                 {"norm", 1.0},
                 {"scale_applied", sp.scale_applied}};
    if (via_balance && wavefunctions::has_closed_lower(spec.tag())) {
        // dual-path report: balance-generated vs closed lower component
        auto closed = wavefunctions::lower_component_closed(st, spec, ctx, ch, tp, grid);
        for (auto& v : closed) v *= sp.scale_applied;
        double m = 0.0, worst = 0.0;
        for (double v : closed) m = std::max(m, std::abs(v));
        for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
            if (std::abs(closed[i]) < 0.05 * m) continue;
            worst = std::max(worst,
                             std::abs(sp.phi_minus[i] - closed[i]) / std::abs(closed[i]));
        }
        side["balance_vs_closed_max_rel_gap"] = worst;
    }
    std::string sidecar_path = (out.empty() || out == "-") ? "" : out + ".json";
    if (sidecar_path.empty())
        std::cout << side.dump(2) << "\n";
    else
        write_out(sidecar_path, side.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::vector<std::string>& targets, bool all, double perturb,
               const std::string& limit_scan_pot, const std::string& out,
               const std::string& command_echo) {
    verify::RunReport rep;
    rep.command = command_echo;
    auto t0 = std::chrono::steady_clock::now();
    if (!limit_scan_pot.empty()) {
        rep.sections.push_back(verify::limit_scan(tag_from_string(limit_scan_pot)));
    } else if (all) {
        rep = verify::run_all(command_echo);
    } else if (!targets.empty()) {
        std::vector<verify::Fixture> fxs;
        for (const auto& t : targets) {
            if (auto f = verify::fixture_by_name(t)) {
                fxs.push_back(*f);
                continue;
            }
            auto byTag = verify::fixtures_for(tag_from_string(t));
            fxs.insert(fxs.end(), byTag.begin(), byTag.end());
        }
        rep.sections.push_back(verify::check_spectra_vs_oracle(fxs, perturb));
    } else {
        throw CLI::ValidationError("verify: name a potential/fixture or pass --all");
    }
    auto t1 = std::chrono::steady_clock::now();
    if (rep.wall_time_seconds == 0.0)
        rep.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    write_out(out, rep.to_json().dump(2) + "\n");
    return rep.pass() ? 0 : 1;
}

// -------------------------------------------------------------------- maps

PotentialTag tag_or_usage(const std::string& name) {
    try {
        return tag_from_string(name);
    } catch (const DomainError& e) {
        throw CLI::ValidationError(std::string(e.what()));
    }
}

int cmd_maps(const std::string& pot, const std::string& format, const std::string& out) {
    PotentialTag tag = tag_or_usage(pot);
    auto maps = parameter_maps::maps_for(tag);
    std::ostringstream os;
    if (format == "json") {
        json arr = json::array();
        for (const auto& m : maps) {
            json subs = json::array();
            for (const auto& s : m.subs) subs.push_back({{"source", s.source}, {"target", s.target}});
            arr.push_back({{"potential", to_string(m.tag)},
                           {"component", m.component == MapComponent::Upper ? "upper" : "lower"},
                           {"branch", m.branch == Branch::Regular ? "regular" : "irregular"},
                           {"substitutions", subs}});
        }
        os << json{{"command", "maps"}, {"maps", arr}}.dump(2) << "\n";
    } else {
        os << "# parameter maps: " << to_string(tag) << "\n";
        for (const auto& m : maps) {
            os << (m.component == MapComponent::Upper ? "upper" : "lower") << " / "
               << (m.branch == Branch::Regular ? "regular" : "irregular") << "\n";
            for (const auto& s : m.subs) {
                char line[128];
                std::snprintf(line, sizeof line, "  %-8s -> %s\n", s.source.c_str(),
                              s.target.c_str());
                os << line;
            }
        }
    }
    write_out(out, os.str());
    return 0;
}

// -------------------------------------------------------------------- xpct

int cmd_xpct(const std::string& ref, const std::string& target, const PotentialFlags& pf,
             double lb, int kappa, const std::string& levels, const std::string& out) {
    PotentialTag rt = tag_or_usage(ref);
    PotentialTag tt = tag_or_usage(target);
    RelativisticContext ctx{lb};
    AngularChannel ch{kappa};

    xpct::XPCTMap map;
    if (rt == tt) {
        map = xpct::make_map(xpct::QTag::Identity, 1.0, rt, tt);
    } else if (rt == PotentialTag::Oscillator && tt == PotentialTag::Morse) {
        map = xpct::make_map(xpct::QTag::LogRho, pf.range_lambda, rt, tt);
    } else if (rt == PotentialTag::Oscillator && tt == PotentialTag::Coulomb) {
        map = xpct::make_map(xpct::QTag::RhoSquared, 1.0, rt, tt);
    } else {
        throw Unsupported("xpct: analytic transport covers identity, "
                          "oscillator->morse and oscillator->coulomb");
    }
    PotentialSpec spec = build_spec(target, pf);
    auto ns = parse_levels(levels);

    json rows = json::array();
    double worst = 0.0;
    for (int n : ns) {
        auto rel = xpct::energy_relation(map, spec, ctx, ch, n);
        SpectrumRequest req{spec, ctx, ch, Branch::Regular, +1, {n}};
        double direct = spectra::energies(req)[0].epsilon;
        double dev = std::abs(rel.eps - direct) / std::abs(direct);
        worst = std::max(worst, dev);
        rows.push_back({{"n", n},
                        {"epsilon_xpct", rel.eps},
                        {"epsilon_direct", direct},
                        {"rel_deviation", dev},
                        {"kappa_hat", rel.kappa_hat}});
    }

    // induced odd component W(r) samples on a short grid
    json wsamples = json::array();
    for (int i = 0; i < 41; ++i) {
        double r = 0.25 + 0.25 * i;
        wsamples.push_back({{"r", r}, {"W", spec.W(r, kappa, ctx)}});
    }

    json j = {{"command", "xpct"},
              {"reference", to_string(rt)},
              {"target", to_string(tt)},
              {"q", map.q_display},
              {"levels", rows},
              {"max_rel_deviation", worst},
              {"induced_W_samples", wsamples}};
    write_out(out, j.dump(2) + "\n");
    return 0;
}

std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
            continue;
        }
        if (a == "--config" && i + 1 < argc) {
            config_path = argv[++i];
            continue;
        }
        args.push_back(a);
    }
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw DomainError("cannot open config file: " + config_path);
        json j;
        f >> j;
        // config flags are appended; explicit command-line values win
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string flag = "--" + it.key() + "=";
            if (it.value().is_string())
                flag += it.value().get<std::string>();
            else
                flag += it.value().dump();
            args.push_back(flag);
        }
    }
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diracsol: bound states of the nine-potential relativistic catalog"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain error");

    double lb = 0.1;
    int kappa = 1;
    std::string levels = "0";
    std::string format = "table";
    std::string out;
    PotentialFlags pf;
    std::string pot, branch = "regular";
    int sign = +1;

    auto* sp = app.add_subcommand("spectrum", "closed-form energy levels");
    sp->add_option("potential", pot, "catalog potential name")->required();
    add_potential_flags(sp, pf);
    sp->add_option("--lambda-bar", lb, "Compton scale");
    sp->add_option("--kappa", kappa, "spin-orbit quantum number");
    sp->add_option("--n", levels, "levels, e.g. 0..3 or 0,2");
    sp->add_option("--branch", branch)->check(CLI::IsMember({"regular", "irregular"}));
    sp->add_option("--sign", sign)->check(CLI::IsMember({1, -1}));
    sp->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));
    sp->add_option("--out", out, "output path (default stdout)");

    int n_single = 0, points = 4001;
    std::string comp = "both", via = "closed";
    auto* wf = app.add_subcommand("wavefunction", "radial spinor CSV + JSON sidecar");
    wf->add_option("potential", pot)->required();
    add_potential_flags(wf, pf);
    wf->add_option("--lambda-bar", lb);
    wf->add_option("--kappa", kappa);
    wf->add_option("--n", n_single);
    wf->add_option("--branch", branch)->check(CLI::IsMember({"regular", "irregular"}));
    wf->add_option("--component", comp)->check(CLI::IsMember({"plus", "minus", "both"}));
    wf->add_option("--via", via)->check(CLI::IsMember({"closed", "balance"}));
    wf->add_option("--points", points);
    wf->add_option("--out", out);

    std::vector<std::string> verify_targets;
    bool verify_all = false;
    double perturb = 0.0;
    std::string limit_scan_pot;
    auto* vf = app.add_subcommand("verify", "closed forms against the shooting oracle");
    vf->add_option("targets", verify_targets, "potential or fixture names");
    vf->add_flag("--all", verify_all, "run the full acceptance fixture suite");
    vf->add_option("--perturb-epsilon", perturb, "perturb closed levels (failure path)");
    vf->add_option("--limit-scan", limit_scan_pot, "O(lambda-bar^2) ratio table");
    vf->add_option("--out", out);

    auto* mp = app.add_subcommand("maps", "parameter-substitution records");
    mp->add_option("potential", pot)->required();
    mp->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    mp->add_option("--out", out);

    std::string xref, xtarget;
    auto* xp = app.add_subcommand("xpct", "transform a reference solution");
    xp->add_option("reference", xref)->required();
    xp->add_option("target", xtarget)->required();
    add_potential_flags(xp, pf);
    xp->add_option("--lambda-bar", lb);
    xp->add_option("--kappa", kappa);
    xp->add_option("--n", levels);
    xp->add_option("--out", out);

    std::vector<std::string> args;
    try {
        args = apply_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string echo = "diracsol";
    for (const auto& a : args) echo += " " + a;

    try {
        if (sp->parsed())
            return cmd_spectrum(pot, pf, lb, kappa, levels, branch, sign, format, out);
        if (wf->parsed())
            return cmd_wavefunction(pot, pf, lb, kappa, n_single, branch, comp, via,
                                    points, out);
        if (vf->parsed())
            return cmd_verify(verify_targets, verify_all, perturb, limit_scan_pot, out, echo);
        if (mp->parsed()) return cmd_maps(pot, format, out);
        if (xp->parsed()) return cmd_xpct(xref, xtarget, pf, lb, kappa, levels, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const BranchError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const Unsupported& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const NoRoot& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
