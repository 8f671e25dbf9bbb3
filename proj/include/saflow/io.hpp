#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "saflow/errors.hpp"
#include "saflow/filament.hpp"
#include "saflow/hasimoto.hpp"
#include "saflow/invariants.hpp"
#include "saflow/loop.hpp"

namespace saflow {

using ConfigHeader = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::ofstream open_artifact(const std::filesystem::path& path, const ConfigHeader& header) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out.is_open()) throw Error("cannot open output file '" + path.string() + "'");
    for (const auto& [k, v] : header) out << "# " << k << " = " << v << "\n";
    out << std::setprecision(17);
    return out;
}

}  // namespace detail

inline void write_loop_csv(const std::filesystem::path& path, const ConfigHeader& header,
                           const LoopMap& u, const LoopField* field = nullptr) {
    std::ofstream out = detail::open_artifact(path, header);
    const std::size_t dim = u.dim();
    out << "x";
    for (std::size_t c = 0; c < dim; ++c) out << ",p" << c;
    if (field) {
        for (std::size_t c = 0; c < dim; ++c) out << ",v" << c;
    }
    out << "\n";
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        out << u.grid().node(j);
        for (double v : u.point(j)) out << "," << v;
        if (field) {
            for (double v : field->at(j)) out << "," << v;
        }
        out << "\n";
    }
}

inline void write_energy_csv(const std::filesystem::path& path, const ConfigHeader& header,
                             std::span<const EnergyReport> reports) {
    std::ofstream out = detail::open_artifact(path, header);
    out << "t,E1,E2,E3,E4\n";
    for (const auto& r : reports)
        out << r.t << "," << r.e1 << "," << r.e2 << "," << r.e3 << "," << r.e4 << "\n";
}

inline void write_complex_csv(const std::filesystem::path& path, const ConfigHeader& header,
                              const ComplexLoop& psi) {
    std::ofstream out = detail::open_artifact(path, header);
    out << "x,re,im,abs\n";
    for (std::size_t j = 0; j < psi.grid.m; ++j) {
        const Complex& v = psi.values[j];
        out << psi.grid.node(j) << "," << v.real() << "," << v.imag() << "," << std::abs(v)
            << "\n";
    }
}

inline void write_filament_csv(const std::filesystem::path& path, const ConfigHeader& header,
                               const FilamentCurve& c, const FrenetData& f) {
    std::ofstream out = detail::open_artifact(path, header);
    out << "s,x,y,z,k,tau\n";
    for (std::size_t j = 0; j < c.grid.m; ++j) {
        const auto p = c.node(j);
        out << c.grid.node(j) << "," << p[0] << "," << p[1] << "," << p[2] << ","
            << f.curvature[j] << "," << f.torsion[j] << "\n";
    }
}

inline void write_mass_csv(const std::filesystem::path& path, const ConfigHeader& header,
                           std::span<const std::pair<double, double>> series) {
    std::ofstream out = detail::open_artifact(path, header);
    out << "t,mass\n";
    for (const auto& [t, m] : series) out << t << "," << m << "\n";
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out.is_open()) throw Error("cannot open output file '" + path.string() + "'");
    out << text;
}

inline std::string snapshot_name(const char* stem, std::size_t index) {
    std::ostringstream os;
    os << stem << "_" << std::setw(6) << std::setfill('0') << index << ".csv";
    return os.str();
}

}  // namespace saflow
