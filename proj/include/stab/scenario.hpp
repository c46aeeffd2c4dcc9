#pragma once

#include "stab/cone.hpp"
#include "stab/kahler.hpp"
#include "stab/quiver.hpp"
#include "stab/vgit.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stab::scenario {

using json = nlohmann::ordered_json;

// Scenario file model (schema 1): named sheaf surrogates, candidate
// families, quiver representations, intersection tensors, and free-form
// per-command parameters.  Every numeric travels as an exact scalar string.
struct Scenario {
    int schema = 1;
    std::vector<sheaf::SheafClass> sheaf_classes;
    struct Family {
        std::string label, target;
        std::vector<std::string> candidates;
        std::vector<std::pair<std::string, std::string>> relations;
    };
    std::vector<Family> families;
    std::vector<quiver::AnyRep> representations;
    struct Tensor {
        std::string label;
        cone::IntersectionTensor tensor;
        std::vector<cone::DivisorClass> amples;
    };
    std::vector<Tensor> tensors;
    json params; // command-specific inputs

    const sheaf::SheafClass& sheaf(const std::string& label) const;
    sheaf::FamilySpec family(const std::string& label) const;
    const quiver::AnyRep& representation(const std::string& label) const;
    // scenario tensors first, then the bundled library
    const cone::IntersectionTensor& tensor(const std::string& label) const;
    std::vector<cone::DivisorClass> tensor_amples(const std::string& label) const;
};

Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::string& path);

// ---- json (de)serialization helpers ----
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& s);
std::vector<Scalar> scalar_list(const json& j);
json scalar_list_to_json(const std::vector<Scalar>& v);
sheaf::StabilityParameter sigma_from_json(const json& j);
cone::DivisorClass divisor_from_json(const json& j, int rho);
cone::CurveClass curve_from_json(const json& j, int rho);
kahler::ChernTodd cherntodd_from_json(const json& j, int rho);

// ---- command executors (shared by the CLI and the tests) ----
struct Caps {
    uint64_t subspace = 1000000;
};

json run_walls(const Scenario& sc, const json& params);
json run_chambers(const Scenario& sc, const json& params, ExecMode mode);
json run_locate(const Scenario& sc, const json& params);
json run_stability(const Scenario& sc, const json& params);
json run_quiver(const Scenario& sc, const std::string& sub, const json& params, uint64_t seed,
                const Caps& caps);
json run_cone(const Scenario& sc, const std::string& sub, const json& params, ExecMode mode);
json run_approx_split(const Scalar& tau, const Scalar& theta,
                      const std::optional<Rational>& lambda);
json run_approx_omega(const Scenario& sc, const json& params);
json run_vgit_scan(const Scenario& sc, const json& params, uint64_t seed, const Caps& caps);

// flatten a report into "path,value" CSV lines
std::string to_csv(const json& j);

} // namespace stab::scenario
