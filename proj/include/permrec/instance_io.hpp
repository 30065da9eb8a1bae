#pragma once

#include <string>

#include "permrec/matrix.hpp"
#include "permrec/permutation.hpp"
#include "permrec/sensing.hpp"

namespace permrec {

/// Matrix dump: one row per line, space-separated, %.17g precision so that
/// write/read round trips are bit-stable.
void write_matrix_dsv(const std::string& path, const DenseMatrix& m);
DenseMatrix read_matrix_dsv(const std::string& path);

void write_permutation_line(const std::string& path, const Permutation& p);
Permutation read_permutation_line(const std::string& path);

/// Writes {tag}_X.dsv, {tag}_B.dsv, {tag}_W.dsv, {tag}_Y.dsv, {tag}_Pi.txt.
void write_instance(const std::string& tag, const SensingInstance& inst);

}  // namespace permrec
