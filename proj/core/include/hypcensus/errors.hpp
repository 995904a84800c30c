#ifndef HYPCENSUS_ERRORS_HPP_
#define HYPCENSUS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hypcensus {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tetshape / specfun
struct DegenerateTetrahedron : Error { using Error::Error; };
struct BranchUndefined : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct NotIdeal : Error { using Error::Error; };
struct NotFiniteSymmetric : Error { using Error::Error; };

// tricomb
struct NonManifold : Error { using Error::Error; };
struct UnsupportedSize : Error { using Error::Error; };
struct BadPairingFormat : Error { using Error::Error; };

// geosolve
struct InconsistentMarks : Error { using Error::Error; };
struct AnsatzInapplicable : Error { using Error::Error; };

// kojima
struct DegenerateEmbedding : Error { using Error::Error; };
struct NonMatchingFace : Error { using Error::Error; };
struct MoveBudgetExhausted : Error { using Error::Error; };
struct MixedDegenerate : Error { using Error::Error; };

// census
struct VolumeMismatchOnMerge : Error { using Error::Error; };

}  // namespace hypcensus

#endif
