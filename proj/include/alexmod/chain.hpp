#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "modules.hpp"
#include "rmatrix.hpp"

namespace alexmod {

// A finite chain complex of free R-modules ... -> R^{r_1} -> R^{r_0}.
// Degrees absent from `ranks` are zero; a boundary absent from `boundaries`
// is the zero map. Composability and d∘d = 0 are checked at construction.
class FreeRChainComplex {
  public:
    FreeRChainComplex(std::map<std::size_t, std::size_t> ranks,
                      std::map<std::size_t, RMatrix> boundaries)
        : ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
        for (auto& [j, m] : boundaries_) {
            if (m.rows() != rank(j - 1) || m.cols() != rank(j))
                throw InvalidInput("boundary in degree " + std::to_string(j) +
                                   " has shape " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()) + ", expected " +
                                   std::to_string(rank(j - 1)) + "x" + std::to_string(rank(j)));
        }
        for (const auto& [j, m] : boundaries_) {
            if (j == 0) throw InvalidInput("degree-0 boundary must be absent");
            if (j + 1 > max_degree()) continue;
            if (!(boundary(j) * boundary(j + 1)).is_zero())
                throw NotAComplex("boundaries in degrees " + std::to_string(j) + " and " +
                                  std::to_string(j + 1) + " do not compose to zero");
        }
    }

    std::size_t rank(std::size_t j) const {
        auto it = ranks_.find(j);
        return it == ranks_.end() ? 0 : it->second;
    }

    // Rank of degree j-1; degree 0 maps to the zero module.
    std::size_t rank_below(std::size_t j) const { return j == 0 ? 0 : rank(j - 1); }

    RMatrix boundary(std::size_t j) const {
        if (j == 0) return RMatrix(0, rank(0));
        auto it = boundaries_.find(j);
        if (it != boundaries_.end()) return it->second;
        return RMatrix(rank(j - 1), rank(j));
    }

    std::size_t max_degree() const {
        std::size_t top = 0;
        for (const auto& [j, r] : ranks_)
            if (r > 0 && j > top) top = j;
        return top;
    }

    std::size_t total_rank() const {
        std::size_t s = 0;
        for (const auto& [j, r] : ranks_) s += r;
        return s;
    }

    const std::map<std::size_t, std::size_t>& ranks() const { return ranks_; }

  private:
    std::map<std::size_t, std::size_t> ranks_;
    std::map<std::size_t, RMatrix> boundaries_;
};

// H_j as a presented R-module. The kernel of ∂_j is free, with basis the
// columns of the SNF right transform at the zero diagonal positions; the
// incoming boundary is rewritten in that basis, which is exactly the
// corresponding rows of right_inv · ∂_{j+1}. The other rows must vanish
// because ∂_j ∘ ∂_{j+1} = 0.
inline PresentedRModule homology(const FreeRChainComplex& c, std::size_t j,
                                 const CancelToken* cancel = nullptr) {
    RMatrix d_j = c.boundary(j);
    RMatrix d_in = c.boundary(j + 1);
    SNFResult snf = smith_normal_form(d_j, cancel);
    std::size_t kernel_rank = c.rank(j) - snf.rank;

    RMatrix coords = snf.right_inv * d_in;
    RMatrix relations(kernel_rank, d_in.cols());
    for (std::size_t i = 0; i < coords.rows(); ++i)
        for (std::size_t k = 0; k < coords.cols(); ++k) {
            if (i < snf.rank) {
                if (!coords.at(i, k).is_zero())
                    throw Error("incoming boundary leaves the kernel; not a complex");
            } else {
                relations.at(i - snf.rank, k) = coords.at(i, k);
            }
        }
    return PresentedRModule(kernel_rank, std::move(relations));
}

}  // namespace alexmod
