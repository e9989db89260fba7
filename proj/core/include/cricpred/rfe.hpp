#pragma once

#include <string>
#include <vector>

#include "cricpred/feature_matrix.hpp"
#include "cricpred/models.hpp"

namespace cricpred {

// Greedy backward elimination driven by leave-one-season-out accuracy.
struct RfeTrace {
    std::vector<std::string> eliminated;   // removal order, size d-1
    std::vector<int> sizes;                // d, d-1, ..., 1
    std::vector<double> accuracy_at_size;  // parallel to sizes
    std::vector<std::string> selected;     // accuracy argmax, smallest size on ties
};

// Leave-one-season-out accuracy of `spec` on the given columns.
double loso_accuracy(const FeatureMatrix& matrix, const ModelSpec& spec,
                     const std::vector<std::string>& columns);

// At each step removes the feature whose removal maximizes evaluation
// accuracy; ties drop the feature with the lower |pearson| against the
// label, then the lexicographically smaller name.
RfeTrace rfe(const FeatureMatrix& matrix, const ModelSpec& spec);

void write_rfe_trace(const std::string& path, const RfeTrace& trace, const ModelSpec& spec);

}  // namespace cricpred
