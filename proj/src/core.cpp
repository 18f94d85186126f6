#include "jumpsim/core.hpp"

namespace jumpsim {

void SpringSpec::validate() const {
    if (!(stiffness > 0.0))
        throw std::invalid_argument("spring.stiffness must be > 0");
    if (!(natural > 0.0))
        throw std::invalid_argument("spring.natural must be > 0");
    if (kind == SpringKind::rotational && !(natural < M_PI))
        throw std::invalid_argument("spring.natural angle must be in (0, pi)");
    if (!std::isfinite(natural) || !std::isfinite(stiffness))
        throw std::invalid_argument("spring parameters must be finite");
}

const char* to_string(TakeoffClass c) {
    switch (c) {
        case TakeoffClass::premature: return "premature";
        case TakeoffClass::idealised: return "idealised";
        case TakeoffClass::delayed: return "delayed";
        case TakeoffClass::no_takeoff: return "no_takeoff";
    }
    return "unknown";
}

JumpHeight jump_height(double v_cg_to, double g, double d) {
    if (v_cg_to < 0.0)
        throw std::invalid_argument("jump_height: v_cg_to must be >= 0");
    if (!(g > 0.0) || !(d > 0.0))
        throw std::invalid_argument("jump_height: g and d must be > 0");
    const double h = v_cg_to * v_cg_to / (2.0 * g);
    return {h, h / d};
}

TakeoffClass classify_takeoff(double spring_state_at_takeoff, double natural,
                              double tol_rel) {
    if (!(tol_rel > 0.0))
        throw std::invalid_argument("classify_takeoff: tol_rel must be > 0");
    if (!(natural > 0.0))
        throw std::invalid_argument("classify_takeoff: natural must be > 0");
    if (spring_state_at_takeoff < natural * (1.0 - tol_rel))
        return TakeoffClass::premature;
    if (spring_state_at_takeoff > natural * (1.0 + tol_rel))
        return TakeoffClass::delayed;
    return TakeoffClass::idealised;
}

double efficiency(const EnergyLedger& ledger_at_takeoff, double epe_initial) {
    if (!(epe_initial > 0.0))
        throw std::invalid_argument(
            "efficiency: epe_initial must be > 0 (degenerate spring charge)");
    return ledger_at_takeoff.ke_y_cg / epe_initial;
}

}  // namespace jumpsim
