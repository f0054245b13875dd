#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dunkl/decay_analysis.hpp"
#include "dunkl/propagator.hpp"
#include "dunkl/radial_transform.hpp"

namespace dunkl {

// Every file starts with "# schema=1". Profiles add "# N=<N>,space=<...>"
// followed by the header r,value_re,value_im. Numbers use %.17g so a
// write/read round trip is exact.
void write_profile(std::ostream& os, const RadialProfile& f);
void write_profile(const std::string& path, const RadialProfile& f);

// Reads values and nodes; the grid weights are not stored, so the caller
// supplies the grid the file was written from (nodes are checked against it).
RadialProfile read_profile(std::istream& is, std::shared_ptr<const RadialGrid> grid);
RadialProfile read_profile(const std::string& path, std::shared_ptr<const RadialGrid> grid);

struct ProfileFile {
    double N = 0.0;
    Space space = Space::Physical;
    std::vector<double> r;
    std::vector<cplx> values;
};
ProfileFile read_profile_raw(std::istream& is);

void write_kernel_sweep(std::ostream& os, const KernelSweep& sw);

struct ReportRow {
    std::string phase;
    double N;
    std::string regime;
    double theta_pred, theta_fit, residual;
    bool pass;
};
void write_report(std::ostream& os, const std::vector<ReportRow>& rows);

struct IndexRow {
    double t;
    std::string file;
    double mass, energy;
};
void write_trajectory_index(std::ostream& os, const std::vector<IndexRow>& rows);

std::string fmt_double(double v);

}  // namespace dunkl
