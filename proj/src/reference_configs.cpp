#include "jumpsim/reference_configs.hpp"

namespace jumpsim::reference {

rhomboid::Config experimental_robot() {
    rhomboid::Config cfg;
    cfg.masses.m1 = 0.1155;   // motor, gears, latch, casing, control, battery
    cfg.masses.m2 = 0.00405;  // upper legs, 8.1 g per pair
    cfg.masses.m3 = 0.00405;
    cfg.masses.m4 = 0.0317;   // knee joints incl. rotational springs, 63.4 g per pair
    cfg.masses.m5 = 0.0317;
    cfg.masses.m6 = 0.00405;  // lower legs
    cfg.masses.m7 = 0.00405;
    cfg.masses.m8 = 0.0105;   // foot gears and base
    cfg.L = 0.15;
    cfg.k_r = 0.7;
    cfg.theta_ini = deg2rad(178.0);
    cfg.theta_end = deg2rad(25.0);
    cfg.g = kGravityDefault;
    return cfg;
}

rhomboid::Config experimental_robot_with_payload(double payload,
                                                 double payload_to_body) {
    if (payload < 0.0 || payload_to_body < 0.0 || payload_to_body > payload)
        throw std::invalid_argument(
            "experimental_robot_with_payload: need 0 <= payload_to_body <= payload");
    rhomboid::Config cfg = experimental_robot();
    cfg.masses.m1 += payload_to_body;
    cfg.masses.m8 += payload - payload_to_body;
    return cfg;
}

baton::Config reference_baton(double k_norm) {
    return baton::config_from_k_norm(1.0, 1.0, k_norm, deg2rad(30.0));
}

}  // namespace jumpsim::reference
