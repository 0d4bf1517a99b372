#pragma once

namespace tcurves {

// Selects the serial reference kernel or its OpenMP counterpart.
enum class Exec { Serial, Parallel };

}  // namespace tcurves
