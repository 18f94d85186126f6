#pragma once

#include "jumpsim/baton.hpp"
#include "jumpsim/prismatic.hpp"
#include "jumpsim/rhomboid.hpp"

// Reference configurations of the physical demonstrator and the conceptual
// study models, used by the verify command, the test suites, and as the
// source of the bundled example config files.

namespace jumpsim::reference {

/// The experimental jumping robot: 205.6 g rhomboidal spring-linkage with a
/// 0.7 N m rad^-1 spring pair per knee, natural angle 178 deg, charged to
/// 25 deg, segment length 0.15 m. Paired masses are split evenly per side.
rhomboid::Config experimental_robot();

/// The same robot carrying an extra payload split between body and foot.
/// `payload_to_body` in [0, payload] goes to the body joint, the rest to the
/// foot joint.
rhomboid::Config experimental_robot_with_payload(double payload = 0.2,
                                                 double payload_to_body = 0.2);

/// Baton with the reference natural angle of 30 deg and a unit rod carrying
/// a unit mass; k_norm selects delayed/idealised/premature behaviour.
baton::Config reference_baton(double k_norm);

}  // namespace jumpsim::reference
