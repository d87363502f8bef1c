#pragma once

namespace spca {

// Every data-parallel kernel has a serial reference path; both must return
// identical results, which the tests check.
enum class Execution { kSerial, kParallel };

}  // namespace spca
