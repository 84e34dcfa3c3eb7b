#pragma once

#include "lgas/particles.hpp"
#include "lgas/solver.hpp"

#include <string>

namespace lgas {

/// Binary snapshot: magic "LGAS", u32 version = 1, u32 d, u32 n per axis
/// (d entries), f64 time, then n^d row-major little-endian f64 values.
void write_snapshot(const std::string& path, const FourierField& f, double t);
FourierField read_snapshot(const std::string& path, double* t = nullptr);

/// Diagnostics CSV: header
/// t,mass,free_energy,dissipation,fisher,l1_dist,l2_dist,mode_k1,...
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows);

/// Particle snapshot CSV with header "i,x1,..,xd".
void write_particles_csv(const std::string& path, const ParticleEnsemble& ens);

/// Ensemble diagnostics CSV: t,pair_energy,F_N_vs_reference,chaos_distance.
struct EnsembleDiagnosticsRow {
    double t = 0.0;
    double pair_energy = 0.0;
    double modulated_energy = 0.0;
    double chaos_distance = 0.0;
};
void write_ensemble_csv(const std::string& path,
                        const std::vector<EnsembleDiagnosticsRow>& rows);

std::string format_double(double v);

} // namespace lgas
