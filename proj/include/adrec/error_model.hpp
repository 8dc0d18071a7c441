#pragma once

#include <cstddef>
#include <vector>

#include "adrec/channel.hpp"

namespace adrec {

// Transmit frame for threshold demodulation: bits s_1..s_j, decision
// threshold (may be negative for the reversible receiver), bit priors.
struct BitFrame {
    std::vector<int> bits;
    long threshold = 0;
    double p1 = 0.5;
    double p0 = 0.5;

    void validate() const;
};

// Rates of the two Poisson counts whose difference is the net bound count
// over bit interval j: psi1 drives adsorptions counted by the end of the
// interval, psi2 those already bound at its start.
struct IsiRates {
    double psi1 = 0.0;
    double psi2 = 0.0;
};

// j is 1-based.
IsiRates isi_rates(const BitFrame& frame, std::size_t j, const SystemParams& p);

// P(net count < threshold | s_j = 1): missed detection.
double p_error_given_bit1(const BitFrame& frame, std::size_t j,
                          const SystemParams& p);

// P(net count >= threshold | s_j = 0): false alarm.
double p_error_given_bit0(const BitFrame& frame, std::size_t j,
                          const SystemParams& p);

// p1 * P(err | s_j=1) + p0 * P(err | s_j=0) with the history s_1..s_{j-1}
// fixed to the frame.  Dispatches on receiver kind (Skellam for the
// reversible receiver, Poisson otherwise).
double p_error_random_bit(const BitFrame& frame, std::size_t j,
                          const SystemParams& p);

// Same, but averaged over all 2^(j-1) histories weighted by the priors.
double p_error_random_bit_averaged(std::size_t j, long threshold, double p1,
                                   double p0, const SystemParams& p);

// Poisson error model for the irreversible kinds; `bit` is the hypothesized
// transmit bit s_j.  Returns the error probability under that bit.
double p_error_fa_pa(const BitFrame& frame, std::size_t j,
                     const SystemParams& p, int bit);

}  // namespace adrec
