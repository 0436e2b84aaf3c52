#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "measure.hpp"
#include "tensor.hpp"

namespace zxh {

struct Port {
    enum class Side : uint8_t { node, in, out };
    Side side = Side::node;
    int node = -1;
    int index = 0;  // leg for nodes, position for boundary ports

    static Port leg(int node, int leg) { return {Side::node, node, leg}; }
    static Port in(int pos) { return {Side::in, -1, pos}; }
    static Port out(int pos) { return {Side::out, -1, pos}; }
    bool operator==(const Port&) const = default;
};

struct Node {
    std::string id;
    Generator gen;
};

class Diagram {
public:
    explicit Diagram(int64_t dim = 2) : dim_(dim) {}

    int64_t dim() const { return dim_; }
    int inputs() const { return n_in_; }
    int outputs() const { return n_out_; }
    void set_boundary(int n_in, int n_out) {
        n_in_ = n_in;
        n_out_ = n_out;
    }
    int add_input() { return n_in_++; }
    int add_output() { return n_out_++; }

    int add(Generator g, std::string id = {});
    void connect(Port a, Port b) { edges_.emplace_back(a, b); }

    const std::vector<Node>& nodes() const { return nodes_; }
    std::vector<Node>& nodes() { return nodes_; }
    const std::vector<std::pair<Port, Port>>& edges() const { return edges_; }
    std::vector<std::pair<Port, Port>>& edges() { return edges_; }
    int find(const std::string& id) const;

    // Throws when a leg or boundary port is unused or used twice.
    void check() const;

private:
    int64_t dim_;
    int n_in_ = 0;
    int n_out_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::pair<Port, Port>> edges_;
};

Tensor evaluate(const Diagram& d, const Context& ctx);

Diagram wire_diagram(int64_t dim, int wires = 1);
Diagram single(int64_t dim, const Generator& g);
Diagram compose_parallel(const Diagram& a, const Diagram& b);
Diagram compose_serial(const Diagram& a, const Diagram& b);
Diagram adjoint(const Diagram& d, const Context& ctx);
// Moves node order around; used to probe contraction-order independence.
Diagram permute_nodes(const Diagram& d, const std::vector<int>& order);

}  // namespace zxh
