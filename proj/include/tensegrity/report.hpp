#pragma once

#include "tensegrity/continuation.hpp"
#include "tensegrity/deformation.hpp"
#include "tensegrity/groebner.hpp"
#include "tensegrity/prestress.hpp"
#include "tensegrity/rigidity.hpp"

#include <json.hpp>

namespace tensegrity::report {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v);
/// Row-major nested arrays.
json matrix_json(const Eigen::MatrixXd& m);
/// Columns as a list of vectors.
json columns_json(const Eigen::MatrixXd& m);
json complex_json(std::complex<double> z);
json complex_vector_json(const continuation::CVector& v);

json rigidity_json(const RigidityReport& rep);
json nullspace_json(const NullspaceDecomposition& dec);
json prestress_json(const PrestressCertificate& cert, const std::vector<SelfStress>& basis);
json track_json(const continuation::TrackResult& r);
json solve_json(const continuation::SolveResult& res, const std::vector<std::string>& variables);
json deform_json(const DeformResult& res);
json epsilon_json(const EpsilonResult& res);

}  // namespace tensegrity::report
