#pragma once

namespace liesphere {

// Grid kernels take an Exec flag. serial is the reference path; parallel
// distributes independent grid points over OpenMP threads. Both write into
// preallocated per-point slots and reduce serially, so results are identical.
enum class Exec { serial, parallel };

inline Exec default_exec() { return Exec::parallel; }

}  // namespace liesphere
