#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "morita/actions.hpp"
#include "morita/bimodules.hpp"
#include "morita/enlargement.hpp"
#include "morita/invariants.hpp"
#include "morita/presentations.hpp"
#include "morita/quantal_frame.hpp"

namespace morita::io {

using json = nlohmann::ordered_json;

// Parse errors come back as BadInput "file:line:col: …".
json read_json(const std::filesystem::path& path);
json parse_json(const std::string& text, const std::string& where);
void write_json(const json& j, const std::filesystem::path& path);

// {n, mult, names?, zero?, identity?}
RawTable table_from_json(const json& j, const std::string& where);
json table_to_json(const InverseSemigroup& s);

// A semigroup reference: "catalog:NAME", a path (relative to `base`), or an
// inline table object.
InverseSemigroup semigroup_from(const json& ref, const std::filesystem::path& base, const std::string& where);
InverseSemigroup load_semigroup(const std::string& arg);

// {semigroup, x_size, act, support, names?}
ActionData action_from_json(const json& j, const std::filesystem::path& base, const std::string& where);
ActionData load_action(const std::string& path);

// {s, t, x_size, lact, ract, inner_s, inner_t}
BiactionTables bimodule_from_json(const json& j, const std::filesystem::path& base, const std::string& where);
BiactionTables load_bimodule(const std::string& path);
json bimodule_to_json(const Biaction& b);

// {generators, relations: [[lhs, rhs], …]}
Presentation presentation_from_json(const json& j, const std::string& where);
Presentation load_presentation(const std::string& path);

json carrier_to_json(const ClosureFamily& c);
json enlargement_to_json(const Enlargement& en);
json simplifying_to_json(const SimplifyingReport& r);
json certificate_to_json(const Certificate& c, const InvarianceReport& inv, const std::string& s_name,
                         const std::string& t_name);

}  // namespace morita::io
