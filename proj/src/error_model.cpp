#include "adrec/error_model.hpp"

#include <cmath>
#include <stdexcept>

namespace adrec {

void BitFrame::validate() const {
    if (bits.empty()) throw std::invalid_argument("BitFrame: bits must be nonempty");
    for (int b : bits)
        if (b != 0 && b != 1)
            throw std::invalid_argument("BitFrame: bits must be 0 or 1");
    if (!(p1 >= 0 && p1 <= 1 && p0 >= 0 && p0 <= 1))
        throw std::invalid_argument("BitFrame: priors must lie in [0,1]");
    if (std::abs(p1 + p0 - 1.0) > 1e-12)
        throw std::invalid_argument("BitFrame: priors must sum to 1");
}

namespace {

void check_index(const BitFrame& frame, std::size_t j) {
    frame.validate();
    if (j < 1 || j > frame.bits.size())
        throw std::out_of_range("bit index out of range");
}

IsiRates rates_with_current(const BitFrame& frame, std::size_t j,
                            const SystemParams& p, int current) {
    const double Tb = p.bit_interval;
    const double Ntx = static_cast<double>(p.molecules_per_bit);
    IsiRates out;
    for (std::size_t i = 1; i <= j; ++i) {
        const int s = (i == j) ? current : frame.bits[i - 1];
        if (!s) continue;
        out.psi1 += Ntx * cumulative_fraction((j - i + 1) * Tb, p);
        if (i < j) out.psi2 += Ntx * cumulative_fraction((j - i) * Tb, p);
    }
    return out;
}

// Poisson rate over bit interval j for the irreversible kinds: the expected
// newly bound count contributed by every emission still in flight.
double poisson_rate(const BitFrame& frame, std::size_t j, const SystemParams& p,
                    int current) {
    const double Tb = p.bit_interval;
    double gamma = 0.0;
    for (std::size_t i = 1; i <= j; ++i) {
        const int s = (i == j) ? current : frame.bits[i - 1];
        if (!s) continue;
        gamma += cumulative_fraction((j - i + 1) * Tb, p) -
                 cumulative_fraction((j - i) * Tb, p);
    }
    return p.molecules_per_bit * gamma;
}

double error_for_bit(const BitFrame& frame, std::size_t j, const SystemParams& p,
                     int bit) {
    if (p.kind() == ReceiverKind::AD) {
        const IsiRates r = rates_with_current(frame, j, p, bit);
        const double below = skellam_cdf(frame.threshold - 1, r.psi1, r.psi2);
        return bit ? below : 1.0 - below;
    }
    return p_error_fa_pa(frame, j, p, bit);
}

}  // namespace

IsiRates isi_rates(const BitFrame& frame, std::size_t j, const SystemParams& p) {
    check_index(frame, j);
    return rates_with_current(frame, j, p, frame.bits[j - 1]);
}

double p_error_given_bit1(const BitFrame& frame, std::size_t j,
                          const SystemParams& p) {
    check_index(frame, j);
    return error_for_bit(frame, j, p, 1);
}

double p_error_given_bit0(const BitFrame& frame, std::size_t j,
                          const SystemParams& p) {
    check_index(frame, j);
    return error_for_bit(frame, j, p, 0);
}

double p_error_random_bit(const BitFrame& frame, std::size_t j,
                          const SystemParams& p) {
    check_index(frame, j);
    return frame.p1 * error_for_bit(frame, j, p, 1) +
           frame.p0 * error_for_bit(frame, j, p, 0);
}

double p_error_random_bit_averaged(std::size_t j, long threshold, double p1,
                                   double p0, const SystemParams& p) {
    if (j < 1) throw std::out_of_range("bit index out of range");
    if (j > 21)
        throw std::invalid_argument(
            "averaged mode enumerates 2^(j-1) histories; j > 21 unsupported");
    BitFrame frame;
    frame.bits.assign(j, 0);
    frame.threshold = threshold;
    frame.p1 = p1;
    frame.p0 = p0;
    frame.validate();
    double total = 0.0;
    const std::size_t histories = std::size_t{1} << (j - 1);
    for (std::size_t h = 0; h < histories; ++h) {
        double weight = 1.0;
        for (std::size_t i = 0; i + 1 < j; ++i) {
            frame.bits[i] = static_cast<int>((h >> i) & 1u);
            weight *= frame.bits[i] ? p1 : p0;
        }
        if (weight == 0.0) continue;
        total += weight * p_error_random_bit(frame, j, p);
    }
    return total;
}

double p_error_fa_pa(const BitFrame& frame, std::size_t j, const SystemParams& p,
                     int bit) {
    check_index(frame, j);
    if (p.kind() == ReceiverKind::AD)
        throw std::invalid_argument(
            "p_error_fa_pa: Poisson model requires an irreversible kind");
    if (bit != 0 && bit != 1)
        throw std::invalid_argument("p_error_fa_pa: bit must be 0 or 1");
    const double rate = poisson_rate(frame, j, p, bit);
    const double below = poisson_cdf(frame.threshold - 1, rate);
    return bit ? below : 1.0 - below;
}

}  // namespace adrec
