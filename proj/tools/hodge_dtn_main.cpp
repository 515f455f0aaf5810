// hodge-dtn: mesh generation, DtN analysis, analytic oracle, matrix export.
//
// Exit codes: 0 success, 1 threshold failure (residuals too large or
// topology recovery ambiguous/mismatched), 2 input or validation error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "hodgedtn/generators.hpp"
#include "hodgedtn/report.hpp"

namespace {

int write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "error: cannot open output file " << out << "\n";
        return 2;
    }
    f << text;
    return 0;
}

bool parse_degrees(const std::string& s, int& lo, int& hi) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(s);
        } else {
            lo = std::stoi(s.substr(0, dots));
            hi = std::stoi(s.substr(dots + 2));
        }
    } catch (const std::exception&) {
        return false;
    }
    return lo >= 0 && hi >= lo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet-to-Neumann operators for differential forms"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a built-in test mesh");
    std::string gen_name;
    int gen_res = 0;
    std::string gen_out;
    gen->add_option("name", gen_name,
                    "disk2d, annulus2d, ball3d, shell3d, solidtorus3d")
        ->required();
    gen->add_option("--resolution", gen_res, "mesh resolution (default per mesh)");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "run the full DtN pipeline");
    std::string ana_mesh, ana_out, ana_degrees;
    bool ana_identities = false, ana_no_timings = false;
    double ana_threshold = 1e3;
    ana->add_option("mesh", ana_mesh, "mesh file path")->required();
    ana->add_flag("--identities", ana_identities, "run the identity suite");
    ana->add_option("--degrees", ana_degrees, "degree range, e.g. 0..1");
    ana->add_option("--rank-threshold", ana_threshold,
                    "singular value gap threshold for rank decisions");
    ana->add_flag("--no-timings", ana_no_timings, "omit the timings block");
    ana->add_option("--out", ana_out, "output file (default stdout)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "analytic cylinder oracle");
    int orc_mmax = 20;
    double orc_L = 1.0;
    std::string orc_out;
    orc->add_option("m_max", orc_mmax, "highest Fourier mode (default 20)");
    orc->add_option("L", orc_L, "cylinder length (default 1)");
    orc->add_option("--out", orc_out, "output file (default stdout)");

    // export
    auto* exp = app.add_subcommand("export", "export one operator matrix");
    std::string exp_mesh, exp_label, exp_out;
    exp->add_option("mesh", exp_mesh, "mesh file path")->required();
    exp->add_option("label", exp_label, "operator label, e.g. Phi0, Psi1")
        ->required();
    exp->add_option("--out", exp_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            int res = gen_res > 0 ? gen_res : hodgedtn::default_resolution(gen_name);
            hodgedtn::SimplicialComplex mesh = hodgedtn::make_mesh(gen_name, res);
            return write_output(gen_out, hodgedtn::write_mesh_text(mesh));
        }
        if (*ana) {
            hodgedtn::AnalyzeOptions opts;
            opts.mesh_name = ana_mesh;
            opts.identities = ana_identities;
            opts.rank_threshold = ana_threshold;
            opts.timings = !ana_no_timings;
            if (!ana_degrees.empty() &&
                !parse_degrees(ana_degrees, opts.degree_lo, opts.degree_hi)) {
                std::cerr << "error: bad --degrees range: " << ana_degrees << "\n";
                return 2;
            }
            hodgedtn::SimplicialComplex mesh = hodgedtn::load_mesh(ana_mesh);
            nlohmann::ordered_json rep = hodgedtn::analyze_mesh(mesh, opts);
            int rc = write_output(ana_out, rep.dump(2) + "\n");
            if (rc) return rc;
            for (const auto& d : rep["topology"]["degrees"])
                if (!d["matches_oracle"].get<bool>()) return 1;
            return 0;
        }
        if (*orc) {
            double max_res = 0.0;
            nlohmann::ordered_json rep =
                hodgedtn::oracle_report(orc_mmax, orc_L, &max_res);
            int rc = write_output(orc_out, rep.dump(2) + "\n");
            if (rc) return rc;
            return max_res > 1e-10 ? 1 : 0;
        }
        if (*exp) {
            hodgedtn::SimplicialComplex mesh = hodgedtn::load_mesh(exp_mesh);
            Eigen::MatrixXd A = hodgedtn::export_operator(mesh, exp_label);
            return write_output(exp_out, hodgedtn::write_matrix_text(A));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
