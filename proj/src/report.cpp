#include "hodgedtn/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hodgedtn/cylinder.hpp"
#include "hodgedtn/exact_rank.hpp"
#include "hodgedtn/topology.hpp"

namespace hodgedtn {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json matrix_json(const Eigen::MatrixXd& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json rank_json(const RankReport& r) {
    json j;
    j["rank"] = r.rank;
    j["null_dim"] = r.null_dim;
    j["gap"] = std::isfinite(r.gap) ? r.gap : 1e308;
    j["ambiguous"] = r.ambiguous;
    return j;
}

json sign_table_json(const SignTable& s) {
    json j;
    j["n"] = s.n;
    j["flux"] = s.flux();
    j["sigma"] = s.sigma();
    json lam = json::array(), g = json::array(), pt = json::array();
    json p12 = json::array(), p22 = json::array();
    for (int k = 0; k <= s.n - 1; ++k) {
        lam.push_back(s.lambda(k));
        g.push_back(s.g(k));
        pt.push_back(s.psitilde(k));
        p12.push_back(s.pi12_for_input(k));
        p22.push_back(s.pi22_for_input(k));
    }
    j["lambda"] = lam;
    j["g"] = g;
    j["psitilde"] = pt;
    j["pi12_for_input"] = p12;
    j["pi22_for_input"] = p22;
    j["discrepancy_notes"] = s.discrepancy_notes();
    return j;
}

}  // namespace

json analyze_mesh(const SimplicialComplex& mesh, const AnalyzeOptions& opts) {
    const auto t_start = Clock::now();
    const int n = mesh.dim;

    BoundaryComplex bnd = extract_boundary(mesh);
    auto t0 = Clock::now();
    GalerkinStructures gs = assemble_galerkin(mesh, bnd);
    const double t_galerkin = ms_since(t0);

    t0 = Clock::now();
    BettiTable betti = simplicial_betti(mesh, bnd);
    const double t_oracle = ms_since(t0);

    DtnAssembler dtn(mesh, bnd, gs);
    OperatorAlgebra alg(dtn, gs);
    TopologyAnalyzer topo(alg, gs, opts.rank_threshold);

    const int lo = (opts.degree_lo < 0) ? 0 : opts.degree_lo;
    const int hi = (opts.degree_hi < 0) ? n - 1 : opts.degree_hi;
    if (lo < 0 || hi > n - 1 || lo > hi)
        throw std::invalid_argument("degree range out of bounds");

    json rep;
    rep["schema"] = kSchemaVersion;
    rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

    json jm;
    jm["name"] = opts.mesh_name;
    jm["dim"] = n;
    jm["h"] = mesh.mesh_size();
    json counts = json::array(), bcounts = json::array();
    for (int k = 0; k <= n; ++k) counts.push_back(mesh.count(k));
    for (int k = 0; k <= n - 1; ++k) bcounts.push_back(bnd.count(k));
    jm["simplex_counts"] = counts;
    jm["boundary_simplex_counts"] = bcounts;
    jm["boundary_components"] = boundary_component_count(bnd);
    rep["mesh"] = jm;

    rep["sign_table"] = sign_table_json(dtn.signs());

    t0 = Clock::now();
    json jt;
    json abs = json::array(), rel = json::array();
    for (int k = 0; k <= n; ++k) {
        abs.push_back(betti.absolute[k]);
        rel.push_back(betti.relative[k]);
    }
    jt["betti_abs"] = abs;
    jt["betti_rel"] = rel;

    json degs = json::array();
    for (int k = lo; k <= hi; ++k) {
        json jd;
        jd["k"] = k;
        RankReport pr = topo.phi_rank(k);
        jd["dim_ker_phi"] = rank_json(pr);
        jd["betti_expected"] = betti.absolute[k];
        jd["matches_oracle"] =
            (pr.null_dim == betti.absolute[k]) && !pr.ambiguous;

        PsiHomologyReport ph = topo.psi_homology(k);
        jd["psi_homology"] = ph.dim;
        jd["psi_homology_expected"] = betti.relative[k + 1] + betti.absolute[k];
        jd["echo"] = ph.dim - pr.null_dim;

        FredholmReport fr = topo.fredholm(k);
        jd["fredholm"] = {{"ker", fr.ker_dim},
                          {"coker", fr.coker_dim},
                          {"index", fr.ker_dim - fr.coker_dim},
                          {"ortho_residual", fr.ortho_residual}};
        jd["ker_containment_angle"] = topo.ker_containment_angle(k);
        jd["image_containment_residual"] = topo.image_containment_residual(k);
        if (k <= n - 2) {
            int pt = topo.psi_tilde_cohomology(k);
            int th = topo.theta_cohomology(k);
            jd["psi_tilde_cohomology"] = pt;
            jd["theta_cohomology"] = th;
            jd["theta_matches_psi_tilde"] = (pt == th);
        }
        degs.push_back(std::move(jd));
    }
    jt["degrees"] = degs;
    if (lo == 0) {
        jt["cor3"] = {{"dim", topo.cor3_dimension()},
                      {"expected", betti.absolute[n - 1]}};
    }
    rep["topology"] = jt;
    const double t_topology = ms_since(t0);

    double t_identities = 0.0;
    if (opts.identities) {
        t0 = Clock::now();
        json ids = json::array();
        for (const IdentityResult& r : alg.identity_suite())
            ids.push_back(
                {{"name", r.name}, {"k", r.degree}, {"residual", r.residual}});
        rep["identities"] = ids;
        t_identities = ms_since(t0);
    }

    if (opts.timings) {
        rep["timings_ms"] = {{"galerkin", t_galerkin},
                             {"exact_oracle", t_oracle},
                             {"topology", t_topology},
                             {"identities", t_identities},
                             {"total", ms_since(t_start)}};
    }
    return rep;
}

json oracle_report(int m_max, double L, double* max_residual) {
    json rep;
    rep["schema"] = kSchemaVersion;
    rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    rep["type"] = "cylinder_oracle";
    rep["L"] = L;
    rep["m_max"] = m_max;

    json modes = json::array();
    for (int m = 0; m <= m_max; ++m) {
        ModeBlock b = mode_solve(m, L);
        json jb;
        jb["m"] = b.m;
        jb["dim"] = b.dim;
        jb["phi0"] = matrix_json(b.phi0);
        jb["phi1"] = matrix_json(b.phi1);
        jb["psi1"] = matrix_json(b.psi1);
        jb["pi12"] = matrix_json(b.pi12);
        jb["pi22"] = matrix_json(b.pi22);
        jb["lambda1"] = matrix_json(b.lambda1_direct);
        modes.push_back(std::move(jb));
    }
    rep["modes"] = modes;

    auto residuals = oracle_identity_suite(m_max, L);
    json ids = json::array();
    for (const auto& r : residuals)
        ids.push_back({{"name", r.name}, {"m", r.m}, {"residual", r.residual}});
    rep["identities"] = ids;
    double mx = oracle_max_residual(residuals);
    rep["max_residual"] = mx;
    if (max_residual) *max_residual = mx;

    OracleTopology t = oracle_psi_accounting(m_max, L);
    rep["topology"] = {{"ker_phi0", t.ker_phi0},
                       {"ker_phi1", t.ker_phi1},
                       {"psi_hom0", t.psi_hom0},
                       {"psi_hom1", t.psi_hom1}};
    json disk = json::array();
    for (int m = 0; m <= m_max; ++m) disk.push_back(disk_dtn_mode(m));
    rep["disk_dtn_modes"] = disk;
    return rep;
}

std::string write_matrix_text(const Eigen::MatrixXd& A) {
    std::ostringstream os;
    os.precision(17);
    os << A.rows() << " " << A.cols() << "\n";
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            if (j) os << " ";
            os << A(i, j);
        }
        os << "\n";
    }
    return os.str();
}

Eigen::MatrixXd read_matrix_text(const std::string& text) {
    std::istringstream is(text);
    int rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw std::invalid_argument("matrix text: bad header");
    Eigen::MatrixXd A(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (!(is >> A(i, j)))
                throw std::invalid_argument("matrix text: truncated data");
    return A;
}

Eigen::MatrixXd export_operator(const SimplicialComplex& mesh,
                                const std::string& label) {
    // split "PhiStrong1" into ("PhiStrong", 1)
    size_t pos = label.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(label[pos - 1])))
        --pos;
    if (pos == label.size() || pos == 0)
        throw std::invalid_argument("unknown operator label: " + label);
    const std::string name = label.substr(0, pos);
    const int k = std::stoi(label.substr(pos));

    BoundaryComplex bnd = extract_boundary(mesh);
    GalerkinStructures gs = assemble_galerkin(mesh, bnd);
    if (name == "Mass") return gs.bmass_dense.at(k);
    if (name == "Wedge") return Eigen::MatrixXd(gs.wedge.at(k));
    if (name == "Trace") return Eigen::MatrixXd(gs.trace_mats.at(k));

    DtnAssembler dtn(mesh, bnd, gs);
    OperatorAlgebra alg(dtn, gs);
    if (name == "Phi") return alg.phi(k).M;
    if (name == "Psi") return alg.psi(k).M;
    if (name == "PhiStrong") return alg.phi_strong(k).M;
    if (name == "PsiWeak") return alg.psi_weak(k).M;
    if (name == "Lambda") return alg.lambda(k).M;
    if (name == "LambdaStrong") return alg.lambda_strong(k).M;
    if (name == "Pi") return alg.pi_block(k).M;
    if (name == "G") return alg.g(k, false).M;
    if (name == "Theta") return alg.theta(k).M;
    if (name == "PsiTilde") return alg.psi_tilde(k).M;
    throw std::invalid_argument("unknown operator label: " + label);
}

}  // namespace hodgedtn
