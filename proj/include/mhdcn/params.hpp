/**
 * @file params.hpp
 * @brief Physical coefficients of the MHD model.
 */
#pragma once

namespace mhdcn {

struct PhysicalParams {
    double nu = 1.0;    ///< fluid viscosity
    double sigma = 1.0; ///< magnetic Reynolds number
    double mu = 1.0;    ///< coupling coefficient M^2 nu / sigma

    /// Throws InvalidArgument unless all three are strictly positive.
    void validate() const;
};

} // namespace mhdcn
