#ifndef SILAB_TOLERANCES_HPP
#define SILAB_TOLERANCES_HPP

namespace silab {

// All numerical thresholds used across the library, in one place.
struct Tolerances {
    double symmetry = 1e-12;       // accepted asymmetry before symmetrizing fails
    double convergence = 1e-12;    // iterative solver termination
    double verification = 1e-9;    // slack granted when checking an inequality
    double pivot = 1e-12;          // relative pivot threshold for inversion
    double singular_block = 1e-12; // |det| relative threshold for local blocks
};

inline const Tolerances& default_tols() {
    static const Tolerances t{};
    return t;
}

}  // namespace silab

#endif
