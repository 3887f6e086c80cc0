#ifndef SILAB_GIBBS_HPP
#define SILAB_GIBBS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "silab/matrix.hpp"
#include "silab/multigraph.hpp"

namespace silab {

enum class ModelKind { MonomerDimer, Hardcore };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

// A partial configuration: elements forced occupied / unoccupied.
struct Pinning {
    std::vector<int> occupied;
    std::vector<int> unoccupied;

    bool empty() const { return occupied.empty() && unoccupied.empty(); }
};

// Gibbs model over matchings (elements = edges) or independent sets
// (elements = vertices), with a strictly positive per-element fugacity.
class ModelInstance {
public:
    ModelInstance(ModelKind kind, Multigraph graph, std::vector<double> fugacity,
                  Pinning pinning = {});
    // Uniform fugacity convenience.
    ModelInstance(ModelKind kind, Multigraph graph, double fugacity,
                  Pinning pinning = {});

    ModelKind kind() const { return kind_; }
    const Multigraph& graph() const { return graph_; }
    const std::vector<double>& fugacity() const { return fugacity_; }
    const Pinning& pinning() const { return pinning_; }

    int n_elements() const;
    bool is_pinned_occupied(int i) const { return pin_state_[i] == 1; }
    bool is_pinned_unoccupied(int i) const { return pin_state_[i] == 2; }
    bool is_pinned(int i) const { return pin_state_[i] != 0; }

    // Same model with every fugacity multiplied by theta (the tilt theta*mu).
    ModelInstance tilt(double theta) const;

private:
    ModelKind kind_;
    Multigraph graph_;
    std::vector<double> fugacity_;
    Pinning pinning_;
    std::vector<uint8_t> pin_state_;  // 0 free, 1 occupied, 2 unoccupied
};

// Complete weighted support of an instance under its pinning, in
// lexicographic configuration order. Configurations list occupied element
// ids (including pinned-occupied ones) in increasing order.
class GibbsOracle {
public:
    GibbsOracle(std::vector<std::vector<int>> configs, std::vector<double> weights,
                int n_elements);

    int size() const { return static_cast<int>(weights_.size()); }
    int n_elements() const { return n_elements_; }
    std::span<const int> config(int idx) const;
    double weight(int idx) const { return weights_[idx]; }
    double z() const { return z_; }

    double occupied_weight(int i) const { return elem_weight_[i]; }
    long occupied_count(int i) const { return elem_count_[i]; }
    double marginal(int i) const { return elem_weight_[i] / z_; }

    // True when the support forces element i (never / always occupied).
    bool is_deterministic(int i) const {
        return elem_count_[i] == 0 || elem_count_[i] == size();
    }
    std::vector<int> free_elements() const;

    // W(i,j) = total weight of configurations containing both i and j
    // (diagonal: containing i).
    Matrix pairwise_occupied_weights() const;

private:
    std::vector<int> flat_;
    std::vector<size_t> offsets_;
    std::vector<double> weights_;
    std::vector<double> elem_weight_;
    std::vector<long> elem_count_;
    double z_ = 0.0;
    int n_elements_ = 0;
};

inline constexpr long kDefaultConfigCap = 1L << 24;

// Exhaustive enumeration. Throws CapExceeded past config_cap configurations
// and EmptySupport when the pinning admits nothing.
GibbsOracle enumerate_support(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// Z by tree DP on forests, by enumeration otherwise.
double partition_function(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// Z by the forest DP only; throws NotAForest.
double forest_partition_function(const ModelInstance& m);

double marginal(const ModelInstance& m, int i, long config_cap = kDefaultConfigCap);

enum class ElementState { Occupied, Unoccupied };

// Pr[j occupied | i in i_state]; throws ZeroProbabilityCondition.
double conditional(const ModelInstance& m, int j, int i, ElementState i_state,
                   long config_cap = kDefaultConfigCap);

// min over free elements of min(mu_i, 1 - mu_i); throws DegenerateElement
// when a free element is deterministic under the pinning.
double marginal_bound(const ModelInstance& m, long config_cap = kDefaultConfigCap);

}  // namespace silab

#endif
