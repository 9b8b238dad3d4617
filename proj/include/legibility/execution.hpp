#pragma once

namespace legibility {

/// Selects the serial reference loop or the OpenMP fan-out for the
/// item-parallel kernels (scoring, bootstrap, synthetic observers).
/// Both paths produce bit-identical output.
enum class Execution { Serial, Parallel };

}  // namespace legibility
