#include "dunkl/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_profile(std::ostream& os, const RadialProfile& f) {
    f.check();
    os << "# schema=1\n";
    os << "# N=" << fmt_double(f.grid->dim.N) << ",space=" << (f.space == Space::Physical ? "physical" : "frequency")
       << "\n";
    os << "r,value_re,value_im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << fmt_double(f.grid->nodes[i]) << ',' << fmt_double(f.values[i].real()) << ','
           << fmt_double(f.values[i].imag()) << '\n';
}

void write_profile(const std::string& path, const RadialProfile& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_profile(os, f);
}

ProfileFile read_profile_raw(std::istream& is) {
    ProfileFile pf;
    std::string line;
    bool schema = false, meta = false, header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# schema=", 0) == 0) {
                if (line != "# schema=1") throw_domain("unsupported profile schema: ", line);
                schema = true;
            } else if (line.rfind("# N=", 0) == 0) {
                const auto comma = line.find(",space=");
                if (comma == std::string::npos) throw_domain("bad profile metadata line: ", line);
                pf.N = std::stod(line.substr(4, comma - 4));
                const std::string sp = line.substr(comma + 7);
                if (sp == "physical")
                    pf.space = Space::Physical;
                else if (sp == "frequency")
                    pf.space = Space::Frequency;
                else
                    throw_domain("bad profile space tag: ", sp);
                meta = true;
            }
            continue;
        }
        if (!header) {
            if (line != "r,value_re,value_im") throw_domain("unexpected profile header: ", line);
            header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw_domain("malformed profile row: ", line);
        pf.r.push_back(std::stod(a));
        pf.values.emplace_back(std::stod(b), std::stod(c));
    }
    if (!schema || !meta || !header) throw_domain("profile file lacks schema, metadata or header line");
    return pf;
}

RadialProfile read_profile(std::istream& is, std::shared_ptr<const RadialGrid> grid) {
    ProfileFile pf = read_profile_raw(is);
    if (pf.N != grid->dim.N) throw_domain("profile N=", pf.N, " does not match grid N=", grid->dim.N);
    if (pf.r != grid->nodes) throw_domain("profile nodes do not match the supplied grid");
    return RadialProfile(std::move(grid), std::move(pf.values), pf.space);
}

RadialProfile read_profile(const std::string& path, std::shared_ptr<const RadialGrid> grid) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_profile(is, std::move(grid));
}

void write_kernel_sweep(std::ostream& os, const KernelSweep& sw) {
    os << "# schema=1\n";
    os << "phase,N,t,j,s,re,im,abs,err_est\n";
    for (const auto& k : sw.samples) {
        os << sw.phase.name() << ',' << fmt_double(sw.dim.N) << ',' << fmt_double(k.t) << ','
           << (k.j < 0 ? std::string("S0") : std::to_string(k.j)) << ',' << fmt_double(k.s) << ','
           << fmt_double(k.value.real()) << ',' << fmt_double(k.value.imag()) << ',' << fmt_double(std::abs(k.value))
           << ',' << fmt_double(k.err_est) << '\n';
    }
}

void write_report(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << "# schema=1\n";
    os << "phase,N,regime,theta_pred,theta_fit,residual,pass\n";
    for (const auto& r : rows)
        os << r.phase << ',' << fmt_double(r.N) << ',' << r.regime << ',' << fmt_double(r.theta_pred) << ','
           << fmt_double(r.theta_fit) << ',' << fmt_double(r.residual) << ',' << (r.pass ? "true" : "false") << '\n';
}

void write_trajectory_index(std::ostream& os, const std::vector<IndexRow>& rows) {
    os << "# schema=1\n";
    os << "t,file,mass,energy\n";
    for (const auto& r : rows)
        os << fmt_double(r.t) << ',' << r.file << ',' << fmt_double(r.mass) << ',' << fmt_double(r.energy) << '\n';
}

}  // namespace dunkl
