#pragma once

namespace oamwig {

/// A real quasiprobability value together with the imaginary part that the
/// quadrature produced and that was discarded after checking.
struct WignerValue {
    double value{0.0};
    double imag_residue{0.0};
};

/// Discarded imaginary parts above this limit signal an inadequate rule.
inline constexpr double kImagResidueLimit = 1e-9;

}  // namespace oamwig
