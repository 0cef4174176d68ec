#pragma once

#include "csopt/problem.hpp"

namespace csopt {

// Welded beam intermediates, evaluated at x = (w, L, d, h).
struct BeamIntermediates {
    double sigma;   // bending stress
    double Q, D, J;
    double delta;   // end deflection
    double alpha, beta;
    double tau;     // shear stress
    double P;       // buckling load
};

BeamIntermediates beam_intermediates(const double* x);

// Coil spring weight minimisation, x = (w, d, L):
// wire diameter, mean coil diameter, coil count (continuous).
Problem spring_problem();

// Welded beam fabrication cost, x = (w, L, d, h):
// weld width, weld length, beam depth, beam thickness.
Problem welded_beam_problem();

bool is_engineering_name(const std::string& name);
Problem make_engineering(const std::string& name);

}  // namespace csopt
