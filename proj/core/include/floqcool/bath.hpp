// bath.hpp: thermal phonon reservoir, Bose occupation and spectral densities.

#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace floqcool {

// |freq| below this is treated as the zero-frequency singularity of N.
inline constexpr double kZeroFrequencyGuard = 1e-12;

struct ThermalBath {
    double beta = 0.0;  // hbar * drive frequency / (k_B T_bath)

    void validate() const;

    friend bool operator==(const ThermalBath&, const ThermalBath&) = default;
};

// N(w) = 1/(e^{beta w} - 1) for w > 0 and N(-w) + 1 for w < 0.
// Throws SingularityError for |w| <= kZeroFrequencyGuard.
double occupation(const ThermalBath& bath, double freq);

// Spectral density J evaluated at non-negative frequencies. Implementations
// must be immutable and return J >= 0.
class SpectralDensity {
public:
    virtual ~SpectralDensity() = default;
    virtual std::string name() const = 0;
    virtual double evaluate(double abs_freq) const = 0;
};

// Transition frequencies enter the density with their absolute value.
inline double density_at(const SpectralDensity& density, double freq) {
    return density.evaluate(freq < 0.0 ? -freq : freq);
}

// J(w) = J0 exp(-(w - center)^2 / width^2)
class GaussianDensity final : public SpectralDensity {
public:
    GaussianDensity(double amplitude, double center, double width);

    std::string name() const override { return "gaussian"; }
    double evaluate(double abs_freq) const override;

    double amplitude() const noexcept { return amplitude_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }

private:
    double amplitude_;
    double center_;
    double width_;
};

// Frequency-independent coupling; the undriven detailed-balance reference.
class FlatDensity final : public SpectralDensity {
public:
    explicit FlatDensity(double amplitude);

    std::string name() const override { return "flat"; }
    double evaluate(double) const override { return amplitude_; }

private:
    double amplitude_;
};

}  // namespace floqcool
