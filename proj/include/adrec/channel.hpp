#pragma once

#include <vector>

#include "adrec/quadrature.hpp"
#include "adrec/special.hpp"

namespace adrec {

enum class ReceiverKind { AD, PA, FA };

// Physical and timing constants of one transmitter/receiver pair.
// Units: um, s.  adsorption_rate may be +inf, which tags the fully
// adsorbing receiver; the tag is dispatched on and never enters arithmetic.
struct SystemParams {
    double diffusion = 8.0;         // um^2/s
    double tx_distance = 11.0;      // transmitter to receiver center, um
    double receiver_radius = 10.0;  // um
    double adsorption_rate = 20.0;  // um/s, +inf = fully adsorbing
    double desorption_rate = 5.0;   // 1/s
    long molecules_per_bit = 1000;  // emitted per bit-1
    double sample_interval = 0.002;  // s
    double bit_interval = 0.2;       // s

    void validate() const;
    ReceiverKind kind() const;
};

struct ChannelResponse {
    std::vector<double> times;       // t = n * Ts
    std::vector<double> net;        // expected net newly adsorbed over [t, t+Ts]
    std::vector<double> cumulative;  // expected adsorbed count at t + Ts
};

// Lemma-style frequency kernel sqrt(jw/D) * phi_z(w, rr); real limit
// 1/(4 pi r0 D) as w -> 0.
Complex q_of_w(double w, const SystemParams& p);

// Frequency-domain concentration kernel at radius r.
Complex phi_z(double w, double r, const SystemParams& p);

// Expected molecule concentration (1/um^3) at radius r, time t, for a unit
// impulse emission.
double concentration(double r, double t, const SystemParams& p);

// Fraction of the emitted molecules bound to the surface at time T,
// dispatched on receiver kind.
double cumulative_fraction(double T, const SystemParams& p);

// Ntx * [R(T+Ts) - R(T)]; may be negative for the reversible receiver.
double net_adsorbed(double T, double Ts, const SystemParams& p);

// Long-time expected bound count.
double asymptotic_adsorbed(const SystemParams& p);

// Samples net_adsorbed on the grid t = n * Ts up to the horizon.
ChannelResponse channel_response_series(const SystemParams& p, double horizon);

}  // namespace adrec
