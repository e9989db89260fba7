#pragma once

#include <span>
#include <vector>

namespace cricpred {

// Binary decision tree over numeric features. Internal nodes route
// x[feature] <= threshold to the left child; leaves carry a value (a hard
// class for forests, an additive log-odds step for boosting).
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    int left = -1;
    int right = -1;
    double value = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict(std::span<const double> row) const {
        int i = 0;
        while (nodes[i].feature >= 0) {
            i = row[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold
                    ? nodes[i].left
                    : nodes[i].right;
        }
        return nodes[i].value;
    }

    bool operator==(const Tree&) const = default;
};

}  // namespace cricpred
