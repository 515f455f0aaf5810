#pragma once
/**
 * End-to-end analysis pipeline and JSON report emission.  Reports are
 * deterministic for fixed inputs and flags (insertion-ordered JSON; the
 * timings block is optional), carry a schema version, and embed the sign
 * table so results are reproducible across builds.
 */

#include <nlohmann/json.hpp>
#include <string>

#include "hodgedtn/mesh.hpp"

namespace hodgedtn {

inline constexpr const char* kToolName = "hodge-dtn";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct AnalyzeOptions {
    std::string mesh_name = "mesh";
    bool identities = false;   ///< run the full identity suite
    int degree_lo = -1;        ///< restrict analyzed degrees (default: all)
    int degree_hi = -1;
    double rank_threshold = 1e3;
    bool timings = true;
};

/** Full pipeline: boundary, Galerkin, DtN solves, operators, topology. */
nlohmann::ordered_json analyze_mesh(const SimplicialComplex& mesh,
                                    const AnalyzeOptions& opts);

/** Cylinder oracle report; sets *max_residual if non-null. */
nlohmann::ordered_json oracle_report(int m_max, double L,
                                     double* max_residual = nullptr);

/** Dense matrix text format: "rows cols" header, then row-major reals. */
std::string write_matrix_text(const Eigen::MatrixXd& A);
Eigen::MatrixXd read_matrix_text(const std::string& text);

/**
 * Assemble one named operator matrix ("Phi0", "Psi1", "Lambda0", "G1",
 * "Theta0", "PsiTilde0", "Pi1", "Mass0", "Wedge0", ...) on a mesh.
 * Throws std::invalid_argument for unknown labels.
 */
Eigen::MatrixXd export_operator(const SimplicialComplex& mesh,
                                const std::string& label);

}  // namespace hodgedtn
