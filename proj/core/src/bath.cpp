#include "floqcool/bath.hpp"

#include <cmath>
#include <sstream>

#include "floqcool/error.hpp"

namespace floqcool {

void ThermalBath::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        std::ostringstream os;
        os << "inverse temperature must be positive and finite, got " << beta;
        throw InvalidArgument(os.str());
    }
}

double occupation(const ThermalBath& bath, double freq) {
    bath.validate();
    if (!std::isfinite(freq)) throw InvalidArgument("occupation requires a finite frequency");
    if (std::abs(freq) <= kZeroFrequencyGuard) {
        std::ostringstream os;
        os << "Bose occupation diverges at zero frequency (freq = " << freq << ")";
        throw SingularityError(os.str(), freq);
    }
    const double n_plus = 1.0 / std::expm1(bath.beta * std::abs(freq));
    return freq > 0.0 ? n_plus : n_plus + 1.0;
}

GaussianDensity::GaussianDensity(double amplitude, double center, double width)
    : amplitude_(amplitude), center_(center), width_(width) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw InvalidArgument("gaussian density amplitude must be positive and finite");
    }
    if (!(center >= 0.0) || !std::isfinite(center)) {
        throw InvalidArgument("gaussian density center must be non-negative and finite");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidArgument("gaussian density width must be positive and finite");
    }
}

double GaussianDensity::evaluate(double abs_freq) const {
    const double z = (abs_freq - center_) / width_;
    return amplitude_ * std::exp(-z * z);
}

FlatDensity::FlatDensity(double amplitude) : amplitude_(amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw InvalidArgument("flat density amplitude must be positive and finite");
    }
}

}  // namespace floqcool
