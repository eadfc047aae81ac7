#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kron/certify.hpp"
#include "kron/densify.hpp"
#include "kron/errors.hpp"
#include "kron/io.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitExhaustion = 3;
constexpr int kExitCertificate = 4;

kron::JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kron::ParseError("cannot open config: " + path);
    return kron::parse_config(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kron::ParseError("cannot open output: " + path);
    out << text;
}

/// Build, certify and serialize in one pass; shared by densify and weyl.
int run_densify(const kron::JobConfig& cfg, const std::string& out_override) {
    const kron::AbelianGroup g = kron::config_group(cfg);
    const std::vector<kron::GroupElement> s = kron::config_set(cfg, g);
    const kron::StagePlan plan =
        kron::enumerate_neighborhoods(cfg.k, cfg.arc_family, cfg.max_blocks, cfg.budget);
    const kron::DensifyResult res = kron::densify(g, s, plan);

    kron::Report rep;
    rep.k = cfg.k;
    rep.free_rank = g.free_rank();
    rep.factors = g.invariant_factors();
    rep.gens = res.phi.domain_gens;
    rep.images = res.phi.images;
    rep.boxes = plan.boxes;
    rep.certs = res.certs;

    // density measurement: images of the elements of S inside the domain
    const kron::SubgroupBasis dom = g.span(res.phi.domain_gens);
    const kron::TorusCodomain cod{cfg.k};
    std::vector<kron::TorusVector> pts;
    for (const kron::GroupElement& e : s)
        if (auto combo = g.decompose(e, dom))
            pts.push_back(kron::evaluate_hom_combo(cod, res.phi, *combo));
    if (!pts.empty() && cfg.grid > 0)
        rep.covering = kron::covering_radius(pts, cfg.k, cfg.grid);

    kron::verify_report(rep);
    const std::string text = kron::serialize_report(rep);
    const std::string out = out_override.empty() ? cfg.out : out_override;
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    if (rep.covering)
        std::cerr << "max_gap bound " << rep.covering->max_gap << " at resolution "
                  << rep.covering->resolution << "\n";
    return 0;
}

int run_analyze(const kron::JobConfig& cfg, const std::string& out_override) {
    if (cfg.wideness_n < 1) throw kron::ParseError("wideness N must be >= 1");
    const kron::AbelianGroup g = kron::config_group(cfg);
    const std::vector<kron::GroupElement> s = kron::config_set(cfg, g);
    std::vector<std::vector<kron::GroupElement>> probes;
    for (const auto& raw : cfg.probes) {
        std::vector<kron::GroupElement> p;
        for (const auto& coords : raw) p.push_back(g.element(coords));
        probes.push_back(std::move(p));
    }
    const kron::WidenessReport rep = kron::wideness_report(g, s, cfg.wideness_n, probes);

    std::ostringstream out;
    out << "kron-wideness v1\n";
    for (const auto& [n, size] : rep.sizes) out << "n " << n.get_str() << " " << size << "\n";
    for (const auto& p : rep.probes) {
        out << "probe " << p.probe_index << " ";
        if (p.first_collapse_n)
            out << p.first_collapse_n->get_str() << "\n";
        else
            out << "-\n";
    }
    if (rep.first_failure)
        out << "first_failure " << rep.first_failure->first.get_str() << " "
            << rep.first_failure->second << "\n";
    else
        out << "first_failure -\n";
    out << "end\n";

    const std::string path = out_override.empty() ? cfg.out : out_override;
    if (path.empty())
        std::cout << out.str();
    else
        write_file(path, out.str());
    return 0;
}

int run_certify(const std::string& report_path) {
    std::ifstream in(report_path);
    if (!in) throw kron::ParseError("cannot open report: " + report_path);
    const kron::Report rep = kron::parse_report(in);
    kron::verify_report(rep);
    std::cerr << "report verified: " << rep.certs.size() << " certificates over "
              << rep.boxes.size() << " boxes\n";
    return 0;
}

kron::JobConfig weyl_config(unsigned long bound, std::size_t grid_arcs, std::size_t grid) {
    kron::JobConfig cfg;
    cfg.free_rank = 1;
    cfg.set_kind = kron::SetKind::squares;
    cfg.set_bound = kron::Int(bound);
    cfg.k = 1;
    for (std::size_t i = 0; i < grid_arcs; ++i)
        cfg.arc_family.emplace_back(kron::Rat(static_cast<long>(i), grid_arcs),
                                    kron::Rat(1, grid_arcs));
    cfg.max_blocks = 1;
    cfg.budget = grid_arcs + 1;
    cfg.grid = grid;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dense-image homomorphisms into tori"};
    app.require_subcommand(1);

    std::string config_path, report_path, out_path;

    CLI::App* densify = app.add_subcommand("densify", "build the map and its certificates");
    densify->add_option("config", config_path, "job config file")->required();
    densify->add_option("-o,--out", out_path, "report output path");

    CLI::App* analyze = app.add_subcommand("analyze", "wideness analysis of S");
    analyze->add_option("config", config_path, "job config file")->required();
    analyze->add_option("-o,--out", out_path, "report output path");

    CLI::App* certify = app.add_subcommand("certify", "re-verify a densify report");
    certify->add_option("report", report_path, "report file")->required();

    unsigned long weyl_bound = 5000;
    std::size_t weyl_arcs = 128, weyl_grid = 128;
    CLI::App* weyl = app.add_subcommand("weyl", "squares-of-integers demo on the circle");
    weyl->add_option("-n,--bound", weyl_bound, "largest n for the squares set");
    weyl->add_option("--arcs", weyl_arcs, "number of grid arcs");
    weyl->add_option("--grid", weyl_grid, "covering grid resolution");
    weyl->add_option("-o,--out", out_path, "report output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitParse;
    }

    try {
        if (densify->parsed()) return run_densify(load_config(config_path), out_path);
        if (analyze->parsed()) return run_analyze(load_config(config_path), out_path);
        if (certify->parsed()) return run_certify(report_path);
        if (weyl->parsed()) return run_densify(weyl_config(weyl_bound, weyl_arcs, weyl_grid), out_path);
    } catch (const kron::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const kron::PreconditionError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitParse;
    } catch (const kron::ExhaustionError& e) {
        std::cerr << "exhaustion: " << e.what() << "\n";
        return kExitExhaustion;
    } catch (const kron::Error& e) {
        std::cerr << "certificate error: " << e.what() << "\n";
        return kExitCertificate;
    }
    return kExitParse;
}
