#pragma once

#include "flipdist/convex_core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flipdist {

// Child references: k >= 0 is internal node k, k < 0 is leaf ~k.
class BinaryTree {
public:
    struct Node {
        int left = -1;
        int right = -1;
    };

    static constexpr bool is_leaf(int child) { return child < 0; }
    static constexpr int leaf(int id) { return ~id; }

    BinaryTree() = default;
    BinaryTree(int root, std::vector<Node> nodes, int leaf_count);

    // Preorder tokens: I for internal, E for external.
    static BinaryTree from_preorder(std::string_view text);
    std::string preorder() const;

    int internal_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const { return leaf_count_; }
    int root() const { return root_; }
    const Node& node(int id) const { return nodes_.at(id); }
    int parent(int id) const;

    // Shape equality; node ids are ignored.
    bool same_shape(const BinaryTree& other) const { return preorder() == other.preorder(); }

private:
    int root_ = -1;
    std::vector<Node> nodes_;
    int leaf_count_ = 1;
};

std::optional<std::string> validate(const BinaryTree& b);

BinaryTree rotate(const BinaryTree& b, int node);

struct DualTree {
    BinaryTree tree;
    std::vector<Edge> node_edge;  // polygon edge behind each internal node
};

DualTree dual_tree(const Triangulation& t);
BinaryTree tree_from_triangulation(const Triangulation& t);
Triangulation triangulation_from_tree(const BinaryTree& b);

int rotation_distance(const BinaryTree& b1, const BinaryTree& b2);

}  // namespace flipdist
