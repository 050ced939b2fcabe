// Space-time scaling and the edge-type table: everything degree-related
#include <algorithm>
// depends only on this, not on the node-type rules.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "treealg/multiindex.hpp"
#include "treealg/rational.hpp"

namespace treealg {

struct EdgeType {
    std::string name;
    Rational degree; // negative: noise, positive: kernel
    bool is_noise() const { return degree < Rational(0); }
};

struct Signature {
    int dim = 0;              // spatial dimension d
    std::vector<int> scaling; // d+1 entries, time first, each >= 1

    size_t midx_size() const { return scaling.size(); }

    const EdgeType& type(const std::string& name) const {
        auto it = types_.find(name);
        if (it == types_.end()) throw std::invalid_argument("unknown edge type: " + name);
        return it->second;
    }
    bool has_type(const std::string& name) const { return types_.count(name) != 0; }

    void add_type(EdgeType t) {
        if (t.degree == Rational(0))
            throw std::invalid_argument("edge type degree must be nonzero: " + t.name);
        types_[t.name] = std::move(t);
    }

    const std::map<std::string, EdgeType>& types() const { return types_; }

    // |k|_s = sum_i s_i k_i
    Rational scaled(const MultiIndex& k) const {
        long long s = 0;
        for (size_t i = 0; i < k.size(); ++i) s += static_cast<long long>(scaling[i]) * k[i];
        return Rational(s);
    }

    MultiIndex zero() const { return MultiIndex(midx_size()); }

    int min_scaling() const {
        int m = scaling.empty() ? 1 : scaling[0];
        for (int v : scaling) m = std::min(m, v);
        return m;
    }

  private:
    std::map<std::string, EdgeType> types_;
};

} // namespace treealg
