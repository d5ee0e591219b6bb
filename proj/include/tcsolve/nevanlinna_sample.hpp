#pragma once

namespace tcsolve {

/// Numeric Nevanlinna data of one function on |z| = r.
struct NevanlinnaSample {
    double r = 0.0;
    double m_r = 0.0;       // proximity m(r, f)
    double N_r = 0.0;       // integrated pole count N(r, f)
    double T_r = 0.0;       // m_r + N_r
    long nu_r = -1;         // central index; -1 when no series is attached
    double logM_r = 0.0;    // log max |f| on the circle
    long n_zeros = 0;       // zeros in |z| <= r
    double N_zero_r = 0.0;     // N(r, 1/f)
    double Nbar_r = 0.0;       // reduced N(r, f)
    double Nbar_zero_r = 0.0;  // reduced N(r, 1/f)
};

}  // namespace tcsolve
