#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumpsim/penalty_contact.hpp"
#include "jumpsim/reference_configs.hpp"
#include "jumpsim/rhomboid.hpp"
#include "jumpsim/verify.hpp"

using namespace jumpsim;
using doctest::Approx;

TEST_CASE("mass aggregates") {
    SUBCASE("single body mass") {
        rhomboid::MassLayout m;
        m.m1 = 1.0;
        const auto agg = rhomboid::compute_aggregates(m);
        CHECK(agg.agg_a == 0.0);
        CHECK(agg.agg_b == 16.0);
        CHECK(agg.agg_c == 0.0);
        CHECK(agg.agg_d == 4.0);
    }
    SUBCASE("experimental mass budget") {
        const auto cfg = reference::experimental_robot();
        const auto agg = rhomboid::compute_aggregates(cfg.masses);
        CHECK(agg.agg_a == Approx(0.2698).epsilon(1e-12));
        CHECK(agg.agg_b == Approx(2.1826).epsilon(1e-12));
        CHECK(agg.agg_c == Approx(0.0162).epsilon(1e-12));
        CHECK(agg.agg_d == Approx(0.6212).epsilon(1e-12));
        CHECK(cfg.masses.total() == Approx(0.2056).epsilon(1e-12));
        // agg_c <= agg_a and agg_d <= agg_b for any layout.
        CHECK(agg.agg_c <= agg.agg_a);
        CHECK(agg.agg_d <= agg.agg_b);
    }
    SUBCASE("left-right swap leaves the aggregates unchanged") {
        auto cfg = reference::experimental_robot();
        cfg.masses.m2 = 0.001;
        cfg.masses.m3 = 0.007;
        cfg.masses.m4 = 0.01;
        cfg.masses.m5 = 0.05;
        const auto a = rhomboid::compute_aggregates(cfg.masses);
        std::swap(cfg.masses.m2, cfg.masses.m3);
        std::swap(cfg.masses.m4, cfg.masses.m5);
        std::swap(cfg.masses.m6, cfg.masses.m7);
        const auto b = rhomboid::compute_aggregates(cfg.masses);
        CHECK(a.agg_a == b.agg_a);
        CHECK(a.agg_b == b.agg_b);
        CHECK(a.agg_c == b.agg_c);
        CHECK(a.agg_d == b.agg_d);
    }
}

TEST_CASE("joint kinematics") {
    const double L = 0.15;
    SUBCASE("fully extended geometry") {
        const auto kin = rhomboid::joint_kinematics(L, M_PI, 0.0, 0.0);
        CHECK(kin.position[0].y() == Approx(2.0 * L));   // body
        CHECK(kin.position[3].y() == Approx(L));         // knee
        CHECK(kin.position[3].x() == Approx(0.0).scale(L));
        CHECK(kin.position[7].norm() == 0.0);            // foot at the origin
    }
    SUBCASE("segment endpoints stay a segment length apart") {
        for (double theta_deg : {25.0, 60.0, 111.0, 178.0}) {
            const auto kin =
                rhomboid::joint_kinematics(L, deg2rad(theta_deg), 0.0, 0.0);
            CHECK((kin.position[0] - kin.position[3]).norm() == Approx(L));
            CHECK((kin.position[0] - kin.position[4]).norm() == Approx(L));
            CHECK((kin.position[7] - kin.position[3]).norm() == Approx(L));
            CHECK((kin.position[7] - kin.position[4]).norm() == Approx(L));
            // Segment centres sit midway between their joints.
            CHECK(((kin.position[0] + kin.position[3]) / 2.0 - kin.position[1])
                      .norm() == Approx(0.0).scale(L));
            CHECK(((kin.position[7] + kin.position[3]) / 2.0 - kin.position[5])
                      .norm() == Approx(0.0).scale(L));
        }
    }
    SUBCASE("body joint rate") {
        const double theta = deg2rad(80.0), thetadot = 12.0;
        const auto kin = rhomboid::joint_kinematics(L, theta, thetadot, 0.0);
        CHECK(kin.position[0].x() == 0.0);  // body moves vertically only
        CHECK(kin.velocity[0].y() ==
              Approx(L * thetadot * std::cos(theta / 2.0)));
        CHECK(kin.segment_rate == Approx(thetadot / 2.0));
    }
    SUBCASE("mass-weighted height matches the aggregate coefficient") {
        const auto cfg = reference::experimental_robot();
        const auto agg = rhomboid::compute_aggregates(cfg.masses);
        const auto m = cfg.masses.as_array();
        for (double theta_deg : {25.0, 90.0, 178.0}) {
            const double theta = deg2rad(theta_deg);
            const auto kin = rhomboid::joint_kinematics(cfg.L, theta, 0.0, 0.0);
            double weighted = 0.0;
            for (int i = 0; i < 8; ++i) weighted += m[i] * kin.position[i].y();
            CHECK(weighted == Approx(agg.agg_d * cfg.L / 2.0 *
                                     std::sin(theta / 2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("spring stiffness from peak force") {
    const double theta_ini = deg2rad(178.0), theta_end = deg2rad(25.0);
    const double L = 0.15;
    SUBCASE("virtual-work oracle") {
        // Quasi-static identity: the charging force at the body satisfies
        // F(theta) dy/dtheta = 2 k_r (theta_ini - theta). Differentiate the
        // stored energy along y numerically and match the inverse map.
        const double k_r = 0.7;
        const double f_max =
            rhomboid::peak_force_from_stiffness(k_r, theta_ini, theta_end, L);
        const auto epe = [&](double th) {
            const double d = theta_ini - th;
            return k_r * d * d;
        };
        const auto y_of = [&](double th) { return 2.0 * L * std::sin(th / 2.0); };
        const auto diff4 = [](auto&& f, double x, double h) {
            return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) -
                    f(x + 2 * h)) /
                   (12.0 * h);
        };
        const double h = 1e-3;
        const double depe_dth = diff4(epe, theta_end, h);
        const double dy_dth = diff4(y_of, theta_end, h);
        const double force_along_y = -depe_dth / dy_dth;
        CHECK(force_along_y == Approx(f_max).epsilon(1e-9));
        // And the forward map inverts it.
        CHECK(rhomboid::spring_stiffness_from_peak_force(f_max, theta_ini,
                                                         theta_end, L) ==
              Approx(k_r).epsilon(1e-12));
    }
    SUBCASE("experimental spring implies a ~25.5 N peak charging force") {
        CHECK(rhomboid::peak_force_from_stiffness(0.7, theta_ini, theta_end, L) ==
              Approx(25.5).epsilon(2e-3));
    }
    SUBCASE("limit of a vanishing charge stroke") {
        // With F proportional to the remaining stroke, k_r approaches
        // F' L cos(theta_ini/2) / 2.
        const double f_per_rad = 40.0;
        const double d_theta = 1e-8;
        const double k_r = rhomboid::spring_stiffness_from_peak_force(
            f_per_rad * d_theta, theta_ini, theta_ini - d_theta, L);
        CHECK(k_r == Approx(f_per_rad * L * std::cos(theta_ini / 2.0) / 2.0)
                         .epsilon(1e-6));
    }
    SUBCASE("inverted angles are an error") {
        CHECK_THROWS_AS(rhomboid::spring_stiffness_from_peak_force(
                            10.0, theta_end, theta_ini, L),
                        std::invalid_argument);
    }
}

TEST_CASE("knee angular acceleration") {
    SUBCASE("unloaded equilibrium") {
        auto cfg = reference::experimental_robot();
        cfg.g = 0.0;
        CHECK(rhomboid::knee_angular_acceleration(cfg, cfg.theta_ini, 0.0) ==
              Approx(0.0).scale(1.0));
    }
    SUBCASE("charged release accelerates the CG past 10g") {
        const auto cfg = reference::experimental_robot();
        CHECK(rhomboid::knee_angular_acceleration(cfg, cfg.theta_end, 0.0) > 0.0);
        CHECK(rhomboid::cg_acceleration(cfg, cfg.theta_end, 0.0) > 10.0 * cfg.g);
    }
    SUBCASE("first-principles Lagrangian oracle") {
        const auto check = verify::lagrangian_oracle(
            reference::experimental_robot(),
            [](const rhomboid::Config& c, double th, double thd) {
                return rhomboid::knee_angular_acceleration(c, th, thd);
            });
        CHECK(check.pass);
        CHECK(check.residual < 1e-6);
    }
    SUBCASE("oracle detects a 1% dynamics perturbation") {
        const auto check = verify::lagrangian_oracle(
            reference::experimental_robot(),
            [](const rhomboid::Config& c, double th, double thd) {
                return 1.01 * rhomboid::knee_angular_acceleration(c, th, thd);
            });
        CHECK(!check.pass);
        CHECK(check.residual > 1e-3);
    }
    SUBCASE("massless linkage has no generalized inertia") {
        auto cfg = reference::experimental_robot();
        cfg.masses = {};
        cfg.masses.m8 = 0.2056;  // everything at the static foot
        CHECK_THROWS_AS(rhomboid::knee_angular_acceleration(cfg, 1.0, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("ground reaction") {
    const auto cfg = reference::experimental_robot();
    const auto m = cfg.masses.as_array();
    SUBCASE("static standing: component sum with zero accelerations") {
        const auto kin = rhomboid::joint_kinematics(cfg.L, 1.0, 0.0, 0.0);
        double fr = 0.0;
        for (int i = 0; i < 8; ++i)
            fr += m[i] * (cfg.g + kin.acceleration[i].y());
        CHECK(fr == Approx(cfg.masses.total() * cfg.g).epsilon(1e-14));
    }
    SUBCASE("component-sum route equals the CG route") {
        const auto check = verify::ground_reaction_identity(cfg);
        CHECK(check.pass);
    }
    SUBCASE("CG velocity identity") {
        const auto check = verify::cg_velocity_identity(cfg);
        CHECK(check.pass);
    }
}

TEST_CASE("energy ledger") {
    const auto cfg = reference::experimental_robot();
    SUBCASE("charged state stores close to 5 J, nothing else") {
        const auto led = rhomboid::energy_ledger(cfg, cfg.theta_end, 0.0);
        CHECK(led.epe == Approx(4.9916).epsilon(1e-4));
        CHECK(led.epe == Approx(cfg.epe_initial()));
        CHECK(led.ke_x == 0.0);
        CHECK(led.ke_y_cg == 0.0);
        CHECK(led.ke_y_rel == 0.0);
        CHECK(led.ke_rot == 0.0);
        CHECK(led.gpe == 0.0);
    }
    SUBCASE("total stays at the initial stored energy along the trajectory") {
        const auto check = verify::energy_conservation_rhomboid(cfg, {});
        CHECK(check.pass);
        CHECK(check.residual < 1e-6);
    }
}

TEST_CASE("simulated release of the experimental robot") {
    const auto cfg = reference::experimental_robot();
    const auto sim = rhomboid::simulate(cfg);
    const auto& rep = sim.report;

    CHECK(rep.classification == TakeoffClass::premature);
    CHECK(rad2deg(rep.state_at_takeoff.q) == Approx(111.066).epsilon(2e-4));
    CHECK(rep.v_cg_to == Approx(4.9753).epsilon(2e-4));
    CHECK(rep.state_at_takeoff.t == Approx(0.047885).epsilon(4e-3));
    CHECK(rep.jump_height == Approx(1.2617).epsilon(1e-3));
    CHECK(rep.jump_height_normalized == Approx(4.2055).epsilon(1e-3));
    CHECK(rep.epe_initial == Approx(4.99155).epsilon(1e-5));

    // Take-off energy split as fractions of the stored energy.
    const auto& led = rep.ledger_at_takeoff;
    CHECK(100.0 * led.gpe / rep.epe_initial == Approx(5.57).epsilon(0.02));
    CHECK(100.0 * led.ke_y_cg / rep.epe_initial == Approx(50.98).epsilon(0.02));
    CHECK(100.0 * led.epe / rep.epe_initial == Approx(19.14).epsilon(0.02));
    CHECK(100.0 * led.ke_x / rep.epe_initial == Approx(15.55).epsilon(0.02));
    CHECK(100.0 * led.ke_y_rel / rep.epe_initial == Approx(8.30).epsilon(0.02));
    CHECK(100.0 * led.ke_rot / rep.epe_initial == Approx(0.46).epsilon(0.03));
    CHECK(rep.efficiency == Approx(0.5098).epsilon(1e-3));

    SUBCASE("take-off balance and the collapsed take-off condition") {
        const auto balance = verify::takeoff_balance(cfg, {});
        CHECK(balance.pass);

        // Both sides of the take-off condition written with the aggregates
        // and the force-to-weight ratio balance at the detected state.
        const auto agg = rhomboid::compute_aggregates(cfg.masses);
        const double m_t = cfg.masses.total();
        const double alpha =
            rhomboid::peak_force_from_stiffness(cfg.k_r, cfg.theta_ini,
                                                cfg.theta_end, cfg.L) /
            (m_t * cfg.g);
        const double th = rep.state_at_takeoff.q;
        const double thd = rep.state_at_takeoff.qdot;
        const double s = std::sin(th / 2.0), c = std::cos(th / 2.0);
        const double lhs = -4.0 * m_t * cfg.g / agg.agg_d;
        const double num =
            (alpha * m_t * cfg.g * std::cos(cfg.theta_end / 2.0) *
                 ((cfg.theta_ini - th) / (cfg.theta_ini - cfg.theta_end)) -
             agg.agg_d * cfg.g / 4.0 * c) *
                c -
            cfg.L * thd * thd / 96.0 * (3.0 * agg.agg_a + agg.agg_c) * s;
        const double den =
            (agg.agg_a * s * s + agg.agg_b * c * c) / 16.0 + agg.agg_c / 48.0;
        CHECK(std::abs(lhs - num / den) / std::abs(lhs) < 1e-6);
    }
}

TEST_CASE("mass placed entirely at the body gives an idealised take-off") {
    auto cfg = reference::experimental_robot();
    cfg.masses = {};
    cfg.masses.m1 = 0.4056;  // robot plus the full 200 g payload
    const auto sim = rhomboid::simulate(cfg);
    CHECK(sim.report.classification == TakeoffClass::idealised);
    CHECK(rad2deg(sim.report.state_at_takeoff.q) == Approx(178.0).epsilon(1e-4));
    CHECK(sim.report.efficiency == Approx(0.8127).epsilon(1e-3));
}

TEST_CASE("mass placed entirely at the foot never takes off") {
    auto cfg = reference::experimental_robot();
    cfg.masses = {};
    cfg.masses.m8 = 0.4056;
    const auto sim = rhomboid::simulate(cfg);
    CHECK(sim.report.classification == TakeoffClass::no_takeoff);
    CHECK(!sim.report.diagnostic.empty());
}

TEST_CASE("gravity-dominated release is reported as no take-off") {
    auto cfg = reference::experimental_robot();
    cfg.k_r = 0.01;
    cfg.masses.m1 = 1.0;
    const auto sim = rhomboid::simulate(cfg);
    CHECK(sim.report.classification == TakeoffClass::no_takeoff);
    CHECK(sim.report.diagnostic.find("torque") != std::string::npos);
}

TEST_CASE("huge unsprung mass runs into the extension clamp") {
    auto cfg = reference::experimental_robot();
    cfg.masses = {};
    cfg.masses.m1 = 1.0;
    cfg.masses.m8 = 40.0;
    const auto sim = rhomboid::simulate(cfg);
    CHECK(sim.report.classification == TakeoffClass::delayed);
    CHECK(sim.report.diagnostic.find("clamp") != std::string::npos);
}

TEST_CASE("penalty-contact cross-check") {
    const auto cfg = reference::experimental_robot();
    SUBCASE("contact force at rest balances the weight") {
        const auto res = penalty::simulate(cfg);
        CHECK(res.contact_force_initial ==
              Approx(cfg.masses.total() * cfg.g).epsilon(1e-12));
    }
    SUBCASE("take-off velocity within 1% of the event-based run") {
        const auto check = verify::event_vs_penalty(cfg, {});
        CHECK(check.pass);
        CHECK(check.residual < 1e-2);
    }
    SUBCASE("soft contact breaks the agreement and is reported") {
        IntegratorSettings soft;
        soft.contact_stiffness = 1e4;
        const auto check = verify::event_vs_penalty(cfg, soft);
        CHECK(!check.pass);
        CHECK(check.residual > 1e-2);
    }
    SUBCASE("halving the fixed step changes the result by far less than 0.1%") {
        IntegratorSettings base;
        IntegratorSettings halved;
        halved.fixed_step = base.fixed_step / 2.0;
        const auto a = penalty::simulate(cfg, base);
        const auto b = penalty::simulate(cfg, halved);
        CHECK(std::abs(a.report.v_cg_to - b.report.v_cg_to) /
                  b.report.v_cg_to <
              1e-3);
    }
}

TEST_CASE("config validation names the offending key") {
    auto cfg = reference::experimental_robot();
    cfg.masses.m4 = -1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), "masses.m4 must be >= 0 and finite",
                         std::invalid_argument);
    auto bad_angles = reference::experimental_robot();
    bad_angles.theta_end = bad_angles.theta_ini + 0.1;
    CHECK_THROWS_AS(bad_angles.validate(), std::invalid_argument);
}
