#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabrecon/derived.hpp"
#include "stabrecon/filtration.hpp"
#include "stabrecon/graded.hpp"

namespace stabrecon::io {

using nlohmann::json;

/// Malformed or inconsistent input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_file(const std::string& path);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);
void write_file(const std::string& path, const json& j);
/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string content_hash(const json& j);

json field_to_json(const Field& f);
Field field_from_json(const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const Field& f, int rows, int cols);

/// algebra.v1
json algebra_to_json(const Algebra& a);
AlgebraPtr algebra_from_json(const json& j);

/// module.v1; dims and actions keyed by vertex and arrow names. Reading also
/// accepts {"projective": v}, {"injective": v}, {"simple": v}, {"syzygy": M}
/// and {"direct_sum": [M, ...]}.
json module_to_json(const Module& m, const std::string& algebra_ref = "");
Module module_from_json(const json& j, const AlgebraPtr& a);

/// module_set.v1: labelled list of modules.
struct ModuleSet {
  std::vector<std::string> labels;
  std::vector<Module> members;
};
json module_set_to_json(const ModuleSet& s, const std::string& algebra_ref = "");
ModuleSet module_set_from_json(const json& j, const AlgebraPtr& a);

json graded_to_json(const Graded& g);
Graded graded_from_json(const json& j, const Module& m);

/// complex.v1
json complex_to_json(const Complex& c, const std::string& algebra_ref = "");
Complex complex_from_json(const json& j, const AlgebraPtr& a);

/// complex_family.v1: {family: [{label, complex}], candidates: [complex], kind}.
struct DerivedInput {
  ComplexFamily family;
  std::vector<Complex> candidates;
  PatternKind kind = PatternKind::I;
};
DerivedInput derived_input_from_json(const json& j, const AlgebraPtr& a);
json derived_input_to_json(const DerivedInput& d, const std::string& algebra_ref = "");

/// tower.v1
json tower_to_json(const Tower& t, const std::string& algebra_ref = "");
Tower tower_from_json(const json& j, const AlgebraPtr& a);

/// filtration.v1: chain (bases per level and vertex), dims, multiplicities
/// and certificate flags.
json filtration_to_json(const Filtration& f, const SimpleSet& s, const RadicalCertificate* cert = nullptr,
                        const std::string& algebra_ref = "");
/// Rebuilds the filtration of `m` from the stored chain (layers re-decomposed).
Filtration filtration_from_json(const json& j, const Module& m, const SimpleSet& s);

/// graded_algebra.v1
json graded_algebra_to_json(const GradedAlgebra& g);
GradedAlgebra graded_algebra_from_json(const json& j);

json hom_pattern_to_json(const HomPatternReport& r, const ComplexFamily& s);

}  // namespace stabrecon::io
