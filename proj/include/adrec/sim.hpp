#pragma once

#include <cstdint>
#include <vector>

#include "adrec/error_model.hpp"
#include "adrec/rng.hpp"

namespace adrec {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

enum class MoleculeStatus { free_molecule, adsorbed };

struct Molecule {
    Vec3 position;
    MoleculeStatus status = MoleculeStatus::free_molecule;
    Vec3 adsorption_site;  // valid while adsorbed
};

struct SimConfig {
    SystemParams params;
    double dt = 1e-5;            // simulation step, s
    Vec3 receiver_center{0, 0, 0};
    std::uint64_t seed = 1;
    long trials = 1;
    BitFrame frame;              // transmit bits + demodulation threshold
    double horizon = 0;          // observation window; 0 -> bits * Tb
    // run the literal per-molecule-per-step engine instead of the
    // statistically equivalent accelerated one (slow; used for validation)
    bool literal_stepping = false;

    void validate() const;
    double effective_horizon() const;
};

struct TrialResult {
    std::vector<long> net_per_sample;  // adsorptions - desorptions per Ts
    std::vector<long> net_per_bit;     // folded over each bit interval
    std::vector<int> demodulated;      // net_per_bit >= threshold
    long final_adsorbed = 0;
};

struct EnsembleResult {
    std::vector<double> times;                 // sample starts, t = n * Ts
    std::vector<double> mean_net_per_sample;
    std::vector<double> stderr_net_per_sample;
    std::vector<double> mean_cumulative;
    std::vector<double> bit_error_rate;        // vs the transmitted bits
    std::vector<std::vector<long>> net_per_bit;  // [trial][bit], for sweeps
    long trials = 0;
};

// Per-step chance that a molecule touching the surface sticks; 1 for the
// fully adsorbing kind.  Clamped to 1 with a warning when dt is too large
// for the configured adsorption rate.
double adsorption_probability(const SystemParams& p, double dt);

// Per-step chance that a bound molecule is released.
double desorption_probability(const SystemParams& p, double dt);

// First crossing of the segment prev->next with the sphere; requires prev
// outside (or on) and next strictly inside.
Vec3 segment_sphere_intersection(const Vec3& prev, const Vec3& next,
                                 const Vec3& center, double rr);

// A molecule that touched the surface but failed its adsorption draw bounces
// back to where the step started.
Vec3 reflect(const Vec3& prev);

// Per-axis displacement magnitude applied on release, drawn from the
// empirical single-step distribution of a molecule leaving the surface.
Vec3 desorption_displacement(SplitRng& rng, double D, double dt);

// Offsets are applied away from the receiver, componentwise about the
// adsorption site; an exactly-zero component stays put.
Vec3 place_after_desorption(const Vec3& site, const Vec3& center,
                            const Vec3& offset);

TrialResult run_trial(const SimConfig& cfg, SplitRng& rng);

EnsembleResult run_ensemble(const SimConfig& cfg);

}  // namespace adrec
