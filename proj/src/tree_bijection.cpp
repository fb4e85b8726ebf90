#include "flipdist/tree_bijection.hpp"

#include "flipdist/errors.hpp"
#include "flipdist/flip_distance.hpp"

#include <functional>
#include <sstream>

namespace flipdist {

BinaryTree::BinaryTree(int root, std::vector<Node> nodes, int leaf_count)
    : root_(root), nodes_(std::move(nodes)), leaf_count_(leaf_count) {}

BinaryTree BinaryTree::from_preorder(std::string_view text) {
    std::vector<char> tokens;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok != "I" && tok != "E") throw ParseError("tree token '" + tok + "'");
        tokens.push_back(tok[0]);
    }
    std::vector<Node> nodes;
    int leaves = 0;
    std::size_t pos = 0;
    std::function<int()> read = [&]() -> int {
        if (pos >= tokens.size()) throw ParseError("truncated preorder");
        char c = tokens[pos++];
        if (c == 'E') return leaf(leaves++);
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        int l = read();
        int r = read();
        nodes[id] = Node{l, r};
        return id;
    };
    int root = read();
    if (pos != tokens.size()) throw ParseError("trailing tokens after preorder");
    if (is_leaf(root)) throw ParseError("tree needs at least one internal node");
    return BinaryTree(root, std::move(nodes), leaves);
}

std::string BinaryTree::preorder() const {
    std::string out;
    std::function<void(int)> walk = [&](int c) {
        if (!out.empty()) out.push_back(' ');
        if (is_leaf(c)) {
            out.push_back('E');
            return;
        }
        out.push_back('I');
        walk(nodes_[c].left);
        walk(nodes_[c].right);
    };
    walk(root_);
    return out;
}

int BinaryTree::parent(int id) const {
    for (int k = 0; k < internal_count(); ++k) {
        if (nodes_[k].left == id || nodes_[k].right == id) return k;
    }
    return -1;
}

std::optional<std::string> validate(const BinaryTree& b) {
    const int m = b.internal_count();
    if (m < 1) return "no internal nodes";
    if (b.leaf_count() != m + 1) return "leaf count must be internal count + 1";
    if (b.root() < 0 || b.root() >= m) return "root is not an internal node";
    std::vector<int> seen_internal(m, 0), seen_leaf(m + 1, 0);
    for (int k = 0; k < m; ++k) {
        for (int c : {b.node(k).left, b.node(k).right}) {
            if (BinaryTree::is_leaf(c)) {
                int id = BinaryTree::leaf(c);
                if (id >= m + 1) return "leaf id out of range";
                ++seen_leaf[id];
            } else {
                if (c >= m) return "child id out of range";
                ++seen_internal[c];
            }
        }
    }
    for (int k = 0; k < m; ++k) {
        int want = k == b.root() ? 0 : 1;
        if (seen_internal[k] != want) return "node " + std::to_string(k) + " has wrong parent count";
    }
    for (int x : seen_leaf) {
        if (x != 1) return "leaf with wrong parent count";
    }
    // Parent counts are right; a cycle would leave some node unreachable from the root.
    std::vector<int> stack{b.root()};
    int reached = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (++reached > m) return "cycle";
        for (int c : {b.node(v).left, b.node(v).right}) {
            if (!BinaryTree::is_leaf(c)) stack.push_back(c);
        }
    }
    if (reached != m) return "disconnected";
    return std::nullopt;
}

BinaryTree rotate(const BinaryTree& b, int node) {
    if (node < 0 || node >= b.internal_count()) throw NotInternal(std::to_string(node));
    int a = b.parent(node);
    if (a < 0) throw IsRoot(std::to_string(node));
    std::vector<BinaryTree::Node> nodes;
    nodes.reserve(b.internal_count());
    for (int k = 0; k < b.internal_count(); ++k) nodes.push_back(b.node(k));
    if (nodes[a].left == node) {
        nodes[a].left = nodes[node].right;
        nodes[node].right = a;
    } else {
        nodes[a].right = nodes[node].left;
        nodes[node].left = a;
    }
    int root = b.root();
    int g = b.parent(a);
    if (g < 0) root = node;
    else if (nodes[g].left == a) nodes[g].left = node;
    else nodes[g].right = node;
    return BinaryTree(root, std::move(nodes), b.leaf_count());
}

DualTree dual_tree(const Triangulation& t) {
    const int n = t.n();
    Adjacency adj(t);
    std::vector<BinaryTree::Node> nodes;
    std::vector<Edge> edges;
    std::function<int(Edge)> build = [&](Edge e) -> int {
        if (e.b == e.a + 1) return BinaryTree::leaf(e.a);
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        edges.push_back(e);
        VertexId c = adj.apex_inside(e);
        int l = build(Edge(e.a, c));
        int r = build(Edge(c, e.b));
        nodes[id] = BinaryTree::Node{l, r};
        return id;
    };
    int root = build(Edge(0, n - 1));
    return DualTree{BinaryTree(root, std::move(nodes), n - 1), std::move(edges)};
}

BinaryTree tree_from_triangulation(const Triangulation& t) { return dual_tree(t).tree; }

Triangulation triangulation_from_tree(const BinaryTree& b) {
    if (auto err = validate(b)) throw ValidationError("invalid tree: " + *err);
    const int n = b.internal_count() + 2;
    std::function<int(int)> leaves = [&](int c) -> int {
        if (BinaryTree::is_leaf(c)) return 1;
        return leaves(b.node(c).left) + leaves(b.node(c).right);
    };
    std::vector<Edge> diags;
    std::function<void(int, VertexId, VertexId)> place = [&](int id, VertexId a, VertexId z) {
        if (id != b.root()) diags.emplace_back(a, z);
        const auto& nd = b.node(id);
        VertexId c = a + leaves(nd.left);
        if (!BinaryTree::is_leaf(nd.left)) place(nd.left, a, c);
        if (!BinaryTree::is_leaf(nd.right)) place(nd.right, c, z);
    };
    place(b.root(), 0, n - 1);
    return Triangulation(n, std::move(diags));
}

int rotation_distance(const BinaryTree& b1, const BinaryTree& b2) {
    if (b1.internal_count() != b2.internal_count()) {
        throw SizeMismatch(std::to_string(b1.internal_count()) + " vs " + std::to_string(b2.internal_count()));
    }
    return exact_distance(triangulation_from_tree(b1), triangulation_from_tree(b2)).distance;
}

}  // namespace flipdist
