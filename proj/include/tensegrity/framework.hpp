/**
 * @file framework.hpp
 * @brief Bar and tensegrity frameworks: graph, embedding and member constraints.
 *
 * A framework is a graph on n nodes whose members are bars, cables or struts,
 * together with a configuration in R^d. Member (i, j) contributes the polynomial
 *
 *     g_ij(x) = sum_k (x_ik - x_jk)^2 - l_ij^2
 *
 * which must vanish for bars, be <= 0 for cables and >= 0 for struts.
 *
 * Node indices are 0-based in memory and 1-based in the JSON documents.
 */
#pragma once

#include <Eigen/Dense>

#include <istream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tensegrity {

/// Raised for malformed input documents and violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MemberKind { bar, cable, strut };

std::string_view to_string(MemberKind kind);
MemberKind member_kind_from_string(std::string_view name);

struct Member {
    int i = 0;
    int j = 0;
    MemberKind kind = MemberKind::bar;
};

class FrameworkGraph {
public:
    /// Members must satisfy 0 <= i < j < nodes with no repeated pair.
    FrameworkGraph(int nodes, int dimension, std::vector<Member> members);

    int node_count() const { return nodes_; }
    int dimension() const { return dimension_; }
    int member_count() const { return static_cast<int>(members_.size()); }
    int coordinate_count() const { return nodes_ * dimension_; }

    const std::vector<Member>& members() const { return members_; }
    const Member& member(int k) const { return members_.at(static_cast<std::size_t>(k)); }

    /// Index of member {i, j} (either order), or -1.
    int find_member(int i, int j) const;

    /// Same graph with the member kinds replaced, in member order.
    FrameworkGraph with_kinds(std::span<const MemberKind> kinds) const;

private:
    int nodes_;
    int dimension_;
    std::vector<Member> members_;
};

/// Node coordinates as an n x d matrix; row i is node i.
class Configuration {
public:
    explicit Configuration(Eigen::MatrixXd coords);

    static Configuration from_flat(const Eigen::VectorXd& flat, int dimension);

    int node_count() const { return static_cast<int>(coords_.rows()); }
    int dimension() const { return static_cast<int>(coords_.cols()); }
    const Eigen::MatrixXd& coords() const { return coords_; }

    /// Node-major flattening (x_11, x_12, ..., x_1d, x_21, ...).
    Eigen::VectorXd flat() const;

    Eigen::VectorXd node(int i) const { return coords_.row(i).transpose(); }

private:
    Eigen::MatrixXd coords_;
};

class MemberConstraintSystem {
public:
    MemberConstraintSystem(FrameworkGraph graph, Eigen::VectorXd rest_sq_lengths);

    /// Rest lengths taken from the embedding so that the residual at p is zero.
    static MemberConstraintSystem from_embedding(FrameworkGraph graph, const Configuration& p);

    const FrameworkGraph& graph() const { return graph_; }
    const Eigen::VectorXd& rest_sq_lengths() const { return rest_sq_lengths_; }

private:
    FrameworkGraph graph_;
    Eigen::VectorXd rest_sq_lengths_;
};

struct MemberEvaluation {
    Eigen::VectorXd residuals;
    std::vector<bool> feasible;

    bool all_feasible() const;
};

inline constexpr double kDefaultFeasibilityTolerance = 1e-9;

/// Residuals g_ij(x) and per-kind feasibility (bar: |g| <= tol, cable: g <= tol, strut: g >= -tol).
MemberEvaluation evaluate_members(const MemberConstraintSystem& sys, const Configuration& x,
                                  double tol_feas = kDefaultFeasibilityTolerance);

Eigen::VectorXd squared_lengths(const FrameworkGraph& graph, const Configuration& x);

struct LoadedFramework {
    FrameworkGraph graph;
    Configuration embedding;
    MemberConstraintSystem system;
    /// Alternative member-kind assignments shipped with the document (e.g. "tensegrity").
    std::map<std::string, std::vector<MemberKind>> partitions;
};

LoadedFramework load_framework(std::istream& in);
LoadedFramework load_framework(std::string_view json_text);
LoadedFramework load_framework_file(const std::string& path);

/// Serializes back to the input schema (1-based indices).
std::string framework_to_json(const FrameworkGraph& graph, const Configuration& p,
                              const Eigen::VectorXd* rest_sq_lengths = nullptr);

void require_shape(const FrameworkGraph& graph, const Configuration& x);

int binomial(int n, int k);

}  // namespace tensegrity
