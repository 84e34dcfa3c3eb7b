#include "lgas/snapshot_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lgas {

namespace {

void write_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void write_f64(std::ofstream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const FourierField& f, double t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out.write("LGAS", 4);
    write_u32(out, 1u);
    write_u32(out, static_cast<std::uint32_t>(f.dim()));
    for (int a = 0; a < f.dim(); ++a) write_u32(out, static_cast<std::uint32_t>(f.n()));
    write_f64(out, t);
    for (double v : f.values()) write_f64(out, v);
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

FourierField read_snapshot(const std::string& path, double* t) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "LGAS", 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    const std::uint32_t version = read_u32(in);
    if (version != 1u) throw std::runtime_error("read_snapshot: unsupported version");
    const int d = static_cast<int>(read_u32(in));
    int n = 0;
    for (int a = 0; a < d; ++a) {
        const int na = static_cast<int>(read_u32(in));
        if (a == 0) n = na;
        else if (na != n) throw std::runtime_error("read_snapshot: anisotropic grid");
    }
    const double time = read_f64(in);
    if (t) *t = time;
    FourierField f(d, n);
    auto& v = f.mutable_values();
    for (double& x : v) x = read_f64(in);
    if (!in) throw std::runtime_error("read_snapshot: truncated file " + path);
    return f;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
    if (!out) throw std::runtime_error("write_diagnostics_csv: cannot open " + path);
    out << "t,mass,free_energy,dissipation,fisher,l1_dist,l2_dist";
    const std::size_t modes = rows.empty() ? 0 : rows.front().mode_amplitudes.size();
    for (std::size_t m = 0; m < modes; ++m) out << ",mode_k" << (m + 1);
    out << "\n";
    for (const auto& r : rows) {
        out << format_double(r.t) << ',' << format_double(r.mass) << ','
            << format_double(r.free_energy) << ',' << format_double(r.dissipation)
            << ',' << format_double(r.fisher) << ',' << format_double(r.l1_dist)
            << ',' << format_double(r.l2_dist);
        for (double a : r.mode_amplitudes) out << ',' << format_double(a);
        out << "\n";
    }
}

void write_particles_csv(const std::string& path, const ParticleEnsemble& ens) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_particles_csv: cannot open " + path);
    out << "i";
    for (int a = 0; a < ens.d; ++a) out << ",x" << (a + 1);
    out << "\n";
    for (int i = 0; i < ens.N; ++i) {
        out << i;
        for (int a = 0; a < ens.d; ++a)
            out << ',' << format_double(ens.pos[static_cast<std::size_t>(i) * ens.d + a]);
        out << "\n";
    }
}

void write_ensemble_csv(const std::string& path,
                        const std::vector<EnsembleDiagnosticsRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ensemble_csv: cannot open " + path);
    out << "t,pair_energy,F_N_vs_reference,chaos_distance\n";
    for (const auto& r : rows)
        out << format_double(r.t) << ',' << format_double(r.pair_energy) << ','
            << format_double(r.modulated_energy) << ','
            << format_double(r.chaos_distance) << "\n";
}

} // namespace lgas
