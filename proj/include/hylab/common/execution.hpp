#pragma once

namespace hylab {

/// Selects the OpenMP kernel or its serial reference. Both produce the same
/// result up to the order of compensated summation.
enum class Execution { serial, parallel };

}  // namespace hylab
