#pragma once

#include <string>

#include "spca/matrix.h"

namespace spca {

enum class InputKind { kCovariance, kSamples };

// Plain CSV of reals, no header, all rows the same length. Throws ParseError.
Matrix read_csv(const std::string& path);

// Covariance: square (NotSquare), entrywise asymmetry <= 1e-9 * max|K|
// (AsymmetryTooLarge), then averaged with its transpose.
// Samples: rows are features, columns are samples; rows are centred and
// K = C C^T / m.
SymmetricMatrix ingest(const std::string& path, InputKind kind);
SymmetricMatrix covariance_from_matrix(const Matrix& m);
SymmetricMatrix covariance_from_samples(const Matrix& q);

}  // namespace spca
