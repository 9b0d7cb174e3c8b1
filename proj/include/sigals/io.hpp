#ifndef SIGALS_IO_HPP
#define SIGALS_IO_HPP

#include <string>
#include <vector>

#include "sigals/contour.hpp"
#include "sigals/field.hpp"

namespace sigals {

// All writers emit deterministic bytes for identical inputs: fixed float
// formatting ("%.12e"), fixed ordering, no timestamps.

struct SeriesRow {
    double t = 0.0;
    double area = 0.0;    // enclosed volume in 3D
    double length = 0.0;  // surface area in 3D
    double kappa_max = 0.0;
    double phi_coupling_error = 0.0;
    int solver_iters_phi = 0;
    int solver_iters_psi_max = 0;
};

void write_series(const std::vector<SeriesRow>& rows, const std::string& path);

void write_contour(const InterfaceCurve& curve, const std::string& path);
void write_contour(const InterfaceMesh& mesh, const std::string& path);

// Legacy ASCII structured-points file carrying phi (SCALARS) and psi (VECTORS).
void write_fields(const ScalarField& phi, const VectorField& psi, double t,
                  const std::string& path);

struct FieldsFile {
    ScalarField phi;
    VectorField psi;
    double t = 0.0;
};
FieldsFile read_fields(const std::string& path);

struct ErrorRow {
    std::string field; // "phi" or "psi"
    ErrorReport report;
};
void write_errors(const std::vector<ErrorRow>& rows, const std::string& path);

struct StudyRow {
    int n = 0;
    double h = 0.0;
    double l2 = 0.0;
    std::optional<double> l2_order;
    double linf = 0.0;
    std::optional<double> linf_order;
    bool failed = false;
    std::string failure;
};
void write_study(const std::vector<StudyRow>& rows, const std::string& path);

} // namespace sigals

#endif
